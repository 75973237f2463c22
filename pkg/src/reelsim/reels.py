"""Trees of probable futures and the paths running through them.

Each node holds a state; expanding a node runs the transition pipeline
and keeps the most probable next frames as children, recording how much
probability mass pruning discarded. A reel is one root-to-leaf path; its
probability is the product of the edge probabilities along the way.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .core import ModelParams, State
from .equilibrium import DEFAULT_CANDIDATES, DEFAULT_MAX_PROFILES
from .frames import transition_distribution
from .sampling import SamplerConfig, derive_node_seed

LEAF_MAX_DEPTH = "max_depth"
LEAF_ALL_DEAD = "all_dead"
LEAF_EMPTY = "empty_distribution"
LEAF_PRUNED = "pruned_out"


@dataclass(frozen=True)
class ReelEdge:
    probability: float
    child: "ReelNode"


@dataclass(frozen=True)
class ReelNode:
    """One state in the tree of futures.

    leaf_reason is None on expanded nodes; on leaves it records why
    expansion stopped. dropped_mass is the probability lost to pruning
    at this node (0 when nothing was pruned or nothing was expanded).
    """

    state: State
    depth: int
    children: tuple[ReelEdge, ...]
    leaf_reason: str | None
    dropped_mass: float

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class Reel:
    """One root-to-leaf path.

    path holds the visited states root first; indices the child index
    taken at each branching, which doubles as a stable identifier.
    """

    path: tuple[State, ...]
    indices: tuple[int, ...]
    edge_probabilities: tuple[float, ...]
    probability: float
    leaf_reason: str | None


def build_reel_tree(
    root: State,
    depth_max: int,
    branch_k: int,
    p_min: float,
    params: ModelParams,
    cfg: SamplerConfig,
    n_lines: int,
    horizon: int,
    *,
    k_candidates: int = DEFAULT_CANDIDATES,
    max_profiles: int = DEFAULT_MAX_PROFILES,
    threads: int = 1,
) -> ReelNode:
    """Expand states recursively until depth, death, or a dead end.

    Children are the transition frames with probability >= p_min, best
    branch_k of them. Every node's expansion seeds its own substream from
    the master seed and the node's path, so a subtree's content depends
    only on where it hangs, not on traversal order; the root node (empty
    path) uses the master seed itself and therefore matches a direct
    transition_distribution call at the root.
    """
    if depth_max < 0:
        raise ValueError(f"depth_max must be nonnegative (got {depth_max})")
    if branch_k < 1:
        raise ValueError(f"branch_k must be at least 1 (got {branch_k})")
    if not 0.0 <= p_min <= 1.0:
        raise ValueError(f"p_min must lie in [0, 1] (got {p_min})")
    master = cfg.rng_seed

    def expand(state: State, depth: int, path: tuple[int, ...]) -> ReelNode:
        if not np.any(state.sizes > 0.0):
            return ReelNode(state, depth, (), LEAF_ALL_DEAD, 0.0)
        if depth == depth_max:
            return ReelNode(state, depth, (), LEAF_MAX_DEPTH, 0.0)
        node_cfg = dataclasses.replace(cfg, rng_seed=derive_node_seed(master, path))
        distribution = transition_distribution(
            state,
            params,
            node_cfg,
            n_lines,
            horizon,
            k_candidates=k_candidates,
            max_profiles=max_profiles,
            threads=threads,
        )
        if distribution.is_empty:
            return ReelNode(state, depth, (), LEAF_EMPTY, 0.0)
        kept = [
            frame for frame in distribution.frames if frame.probability >= p_min
        ][:branch_k]
        if not kept:
            return ReelNode(state, depth, (), LEAF_PRUNED, 1.0)
        dropped = max(0.0, 1.0 - sum(frame.probability for frame in kept))
        edges = tuple(
            ReelEdge(
                frame.probability,
                expand(State(frame.tactics, frame.sizes), depth + 1, path + (index,)),
            )
            for index, frame in enumerate(kept)
        )
        return ReelNode(state, depth, edges, None, dropped)

    return expand(root, 0, ())


def reel_probability(reel: Reel) -> float:
    """Product of the reel's edge probabilities; 1 for a bare root."""
    return math.prod(reel.edge_probabilities)


def enumerate_reels(tree: ReelNode) -> list[Reel]:
    """Every root-to-leaf path, most probable first.

    Ties order by child indices, so the output is deterministic for a
    deterministic tree.
    """
    reels: list[Reel] = []

    def walk(
        node: ReelNode,
        states: tuple[State, ...],
        indices: tuple[int, ...],
        probabilities: tuple[float, ...],
    ) -> None:
        states = states + (node.state,)
        if node.is_leaf:
            reels.append(
                Reel(
                    path=states,
                    indices=indices,
                    edge_probabilities=probabilities,
                    probability=math.prod(probabilities),
                    leaf_reason=node.leaf_reason,
                )
            )
            return
        for index, edge in enumerate(node.children):
            walk(
                edge.child,
                states,
                indices + (index,),
                probabilities + (edge.probability,),
            )

    walk(tree, (), (), ())
    reels.sort(key=lambda reel: (-reel.probability, reel.indices))
    return reels
