"""Sampled stage games: best responses, equilibria, and guarantees.

Each agent gets a pool of randomly drawn candidate tactic columns. Every
profile (one column per agent) is scored by the expected utility it
yields from the current state, and the profiles where no agent can do
better by switching within its own pool are the stage equilibria. The
per-agent worst case across those equilibria is the guarantee an agent
can insist on when longer lines of play are judged; when the sample has
no equilibrium at all, the security level (best worst case) stands in.

The profile space is enumerated exhaustively while it fits a budget and
Monte Carlo subsampled beyond it. A subsampled sweep checks each drawn
profile exactly (full deviation scan per agent) but can miss equilibria
that were never drawn.

Every payoff goes through the same scalar pipeline: update_sizes, then
positional_utility, then the inertia discount. Keeping one code path for
single and bulk evaluation makes results reproducible against a plain
re-implementation down to the last bit, which the test suite exploits.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import ModelParams, State, update_sizes
from .sampling import (
    CANDIDATE_STREAM,
    PROFILE_STREAM,
    SamplerConfig,
    sample_tactic_vector,
    substream,
)
from .utility import expected_utility, positional_utility

DEFAULT_CANDIDATES = 30
DEFAULT_MAX_PROFILES = 200_000


@dataclass(frozen=True)
class StageGame:
    """Solved stage game at one state.

    candidates holds one (k, n) array per agent, rows being that agent's
    candidate columns. equilibria are full tactic matrices assembled from
    candidate columns. minimax is the per-agent guarantee: the worst
    equilibrium payoff, or the security level when equilibria is empty.
    exhaustive records whether every profile was checked.
    """

    candidates: tuple[np.ndarray, ...]
    equilibria: tuple[np.ndarray, ...]
    minimax: np.ndarray
    exhaustive: bool


def sample_candidates(
    n: int, k: int, cfg: SamplerConfig, rng: np.random.Generator
) -> tuple[np.ndarray, ...]:
    """Draw k candidate tactic columns per agent from a single stream."""
    if k < 1:
        raise ValueError(f"need at least one candidate per agent (got k={k})")
    return tuple(
        np.stack([sample_tactic_vector(n, agent, cfg, rng) for _ in range(k)])
        for agent in range(n)
    )


def profile_matrix(candidates: tuple[np.ndarray, ...], profile: tuple[int, ...]) -> np.ndarray:
    """Assemble the full tactic matrix for one choice of candidate per agent."""
    return np.column_stack([candidates[agent][index] for agent, index in enumerate(profile)])


def stage_payoffs(
    tactics: np.ndarray, previous: np.ndarray, sizes: np.ndarray, params: ModelParams
) -> np.ndarray:
    """Expected-utility vector of playing one full matrix from (previous, sizes)."""
    updated = update_sizes(tactics, sizes, params)
    utilities = positional_utility(updated, params.alpha)
    return expected_utility(utilities, tactics, previous, params.sigma)


def best_response(
    agent: int,
    fixed: np.ndarray,
    candidates: np.ndarray,
    previous: np.ndarray,
    sizes: np.ndarray,
    params: ModelParams,
) -> tuple[int, float]:
    """Index and payoff of the agent's best candidate against fixed columns.

    fixed is a full matrix whose column `agent` is overwritten by each
    candidate in turn. Payoff ties break toward the candidate closest to
    the agent's previous column, then toward the lower index; comparisons
    are exact, duplicates are what the tie rule is for.
    """
    fixed = np.asarray(fixed, dtype=float)
    previous = np.asarray(previous, dtype=float)
    pool = np.asarray(candidates, dtype=float)
    if pool.ndim != 2 or pool.shape[0] == 0:
        raise ValueError("candidate pool must be a nonempty stack of columns")
    best_rank = None
    best_index = -1
    best_payoff = 0.0
    for index, column in enumerate(pool):
        tactics = fixed.copy()
        tactics[:, agent] = column
        payoff = float(stage_payoffs(tactics, previous, sizes, params)[agent])
        closeness = float(np.linalg.norm(column - previous[:, agent]))
        rank = (-payoff, closeness, index)
        if best_rank is None or rank < best_rank:
            best_rank = rank
            best_index = index
            best_payoff = payoff
    return best_index, best_payoff


def stage_nash_equilibria(
    candidates: tuple[np.ndarray, ...],
    previous: np.ndarray,
    sizes: np.ndarray,
    params: ModelParams,
    *,
    max_profiles: int = DEFAULT_MAX_PROFILES,
    rng: np.random.Generator | None = None,
) -> list[np.ndarray]:
    """All profiles where every agent's column attains its axis maximum.

    Exhaustive within max_profiles total profiles; beyond that a random
    subset is screened (rng defaults to a fixed stream) and the result may
    be incomplete. The returned list can legitimately be empty.
    """
    candidates = tuple(np.asarray(pool, dtype=float) for pool in candidates)
    previous = np.asarray(previous, dtype=float)
    sizes = np.asarray(sizes, dtype=float)
    ks = tuple(len(pool) for pool in candidates)
    if math.prod(ks) <= max_profiles:
        tensor = payoff_tensor(candidates, previous, sizes, params)
        profiles = _equilibrium_profiles(tensor)
    else:
        if rng is None:
            rng = np.random.default_rng(0)
        evaluate = _payoff_cache(candidates, previous, sizes, params)
        profiles = _sampled_equilibrium_profiles(ks, evaluate, max_profiles, rng)
    return [profile_matrix(candidates, profile) for profile in profiles]


def minimax_vector(
    equilibria: list[np.ndarray],
    candidates: tuple[np.ndarray, ...],
    previous: np.ndarray,
    sizes: np.ndarray,
    params: ModelParams,
    *,
    max_profiles: int = DEFAULT_MAX_PROFILES,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Per-agent guarantee: worst equilibrium payoff, or security level.

    With equilibria present, element i is the minimum over them of agent
    i's payoff. With none, element i is agent i's security level: its best
    candidate under the worst combination of the others' candidates.
    """
    candidates = tuple(np.asarray(pool, dtype=float) for pool in candidates)
    previous = np.asarray(previous, dtype=float)
    sizes = np.asarray(sizes, dtype=float)
    if equilibria:
        stacked = np.stack(
            [stage_payoffs(np.asarray(m, dtype=float), previous, sizes, params) for m in equilibria]
        )
        return stacked.min(axis=0)
    ks = tuple(len(pool) for pool in candidates)
    if math.prod(ks) <= max_profiles:
        return _security_from_tensor(payoff_tensor(candidates, previous, sizes, params))
    if rng is None:
        rng = np.random.default_rng(0)
    evaluate = _payoff_cache(candidates, previous, sizes, params)
    return _sampled_security_levels(ks, evaluate, max_profiles, rng)


def stage_game(
    state: State,
    params: ModelParams,
    cfg: SamplerConfig,
    *,
    k_candidates: int = DEFAULT_CANDIDATES,
    max_profiles: int = DEFAULT_MAX_PROFILES,
) -> StageGame:
    """Draw candidate pools at a state and solve the resulting game.

    Candidate draws come from one dedicated substream of the config seed
    and profile subsampling from another, so the same config always
    reproduces the same game. The payoff table is computed once and reused
    for both the equilibrium scan and the guarantee.
    """
    n = state.n
    candidates = sample_candidates(
        n, k_candidates, cfg, substream(cfg.rng_seed, CANDIDATE_STREAM)
    )
    ks = tuple(len(pool) for pool in candidates)
    exhaustive = math.prod(ks) <= max_profiles
    if exhaustive:
        tensor = payoff_tensor(candidates, state.tactics, state.sizes, params)
        profiles = _equilibrium_profiles(tensor)
        if profiles:
            minimax = np.stack([tensor[profile] for profile in profiles]).min(axis=0)
        else:
            minimax = _security_from_tensor(tensor)
    else:
        rng = substream(cfg.rng_seed, PROFILE_STREAM)
        evaluate = _payoff_cache(candidates, state.tactics, state.sizes, params)
        profiles = _sampled_equilibrium_profiles(ks, evaluate, max_profiles, rng)
        if profiles:
            minimax = np.stack([evaluate(profile) for profile in profiles]).min(axis=0)
        else:
            minimax = _sampled_security_levels(ks, evaluate, max_profiles, rng)
    equilibria = tuple(profile_matrix(candidates, profile) for profile in profiles)
    return StageGame(
        candidates=candidates,
        equilibria=equilibria,
        minimax=minimax,
        exhaustive=exhaustive,
    )


def payoff_tensor(
    candidates: tuple[np.ndarray, ...],
    previous: np.ndarray,
    sizes: np.ndarray,
    params: ModelParams,
) -> np.ndarray:
    """Payoff table over the whole profile space, shape (k_1..k_n, n)."""
    ks = tuple(len(pool) for pool in candidates)
    tensor = np.empty(ks + (len(ks),))
    for profile in itertools.product(*(range(k) for k in ks)):
        tensor[profile] = stage_payoffs(
            profile_matrix(candidates, profile), previous, sizes, params
        )
    return tensor


def _equilibrium_profiles(tensor: np.ndarray) -> list[tuple[int, ...]]:
    """Profiles where each agent's payoff equals the maximum along its axis."""
    n = tensor.shape[-1]
    mask = np.ones(tensor.shape[:-1], dtype=bool)
    for agent in range(n):
        payoffs = tensor[..., agent]
        mask &= payoffs == payoffs.max(axis=agent, keepdims=True)
    return [tuple(int(index) for index in profile) for profile in np.argwhere(mask)]


def _security_from_tensor(tensor: np.ndarray) -> np.ndarray:
    """Max-min value per agent: best candidate under worst others."""
    n = tensor.shape[-1]
    levels = np.empty(n)
    for agent in range(n):
        payoffs = tensor[..., agent]
        others = tuple(axis for axis in range(n) if axis != agent)
        worst = payoffs.min(axis=others) if others else payoffs
        levels[agent] = worst.max()
    return levels


def _payoff_cache(candidates, previous, sizes, params):
    """Memoized per-profile payoff evaluator for the subsampled paths."""
    cache: dict[tuple[int, ...], np.ndarray] = {}

    def evaluate(profile: tuple[int, ...]) -> np.ndarray:
        payoffs = cache.get(profile)
        if payoffs is None:
            payoffs = stage_payoffs(
                profile_matrix(candidates, profile), previous, sizes, params
            )
            cache[profile] = payoffs
        return payoffs

    return evaluate


def _sampled_equilibrium_profiles(
    ks: tuple[int, ...], evaluate, max_profiles: int, rng: np.random.Generator
) -> list[tuple[int, ...]]:
    """Screen a random subset of profiles; each check itself is exact.

    Checking one profile costs sum(ks) evaluations (the full deviation
    scan), so the number of screened profiles is budgeted accordingly.
    """
    budget = max(1, max_profiles // (sum(ks) + 1))
    drawn = {
        tuple(int(rng.integers(k)) for k in ks) for _ in range(budget)
    }
    found = []
    for profile in sorted(drawn):
        own = evaluate(profile)
        if all(
            own[agent]
            >= max(
                evaluate(profile[:agent] + (alt,) + profile[agent + 1 :])[agent]
                for alt in range(ks[agent])
            )
            for agent in range(len(ks))
        ):
            found.append(profile)
    return found


def _sampled_security_levels(
    ks: tuple[int, ...], evaluate, max_profiles: int, rng: np.random.Generator
) -> np.ndarray:
    """Monte Carlo max-min: the worst case is taken over sampled others.

    An approximation from above (a wider scan could only lower the inner
    minimum); used only when the profile space exceeds the budget.
    """
    n = len(ks)
    combos = max(1, max_profiles // max(1, sum(ks)))
    levels = np.empty(n)
    for agent in range(n):
        best = -math.inf
        for own in range(ks[agent]):
            worst = math.inf
            for _ in range(combos):
                profile = tuple(
                    own if axis == agent else int(rng.integers(ks[axis]))
                    for axis in range(n)
                )
                worst = min(worst, float(evaluate(profile)[agent]))
            best = max(best, worst)
        levels[agent] = best
    return levels
