"""The three payoff layers agents care about.

Positional utility scores a size vector (dominance plus absolute growth),
expected utility discounts it by the social-inertia probability of the
tactical move that produced it, and intertemporal utility folds a sequence
of expected payoffs into one discounted number per agent.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import erfc

_SQRT2 = math.sqrt(2.0)


def positional_utility(sizes: np.ndarray, alpha: float) -> np.ndarray:
    """Per-agent payoff u_i = s_i**alpha / sum_j(s_j**2).

    The denominator rewards a small, divided field of competitors; the
    numerator's exponent controls the appetite for absolute growth. Dead
    agents score exactly 0. When every agent is dead the quotient is
    undefined and the all-zero vector is returned.
    """
    sizes = np.asarray(sizes, dtype=float)
    if np.any(sizes < 0):
        raise ValueError("sizes must be nonnegative")
    concentration = float(np.sum(sizes**2))
    if concentration == 0.0:
        return np.zeros_like(sizes)
    return sizes**alpha / concentration


def tactical_distance(tactics_a: np.ndarray, tactics_b: np.ndarray) -> float:
    """Entrywise Euclidean (Frobenius) distance between two tactic matrices."""
    tactics_a = np.asarray(tactics_a, dtype=float)
    tactics_b = np.asarray(tactics_b, dtype=float)
    if tactics_a.shape != tactics_b.shape:
        raise ValueError(f"shape mismatch: {tactics_a.shape} vs {tactics_b.shape}")
    return float(np.sqrt(np.sum((tactics_a - tactics_b) ** 2)))


def inertia_probability(distance: float, sigma: float) -> float:
    """Probability that a tactical move of the given distance is realized.

    Half-normal tail: erfc(distance / (sigma * sqrt(2))). Equals 1 at zero
    distance, decreases strictly with distance, and grows with sigma
    (weaker inertia) at any fixed positive distance.
    """
    if distance < 0:
        raise ValueError(f"tactical distance cannot be negative (got {distance})")
    if sigma <= 0:
        raise ValueError(f"sigma must be positive (got {sigma})")
    return float(erfc(distance / (sigma * _SQRT2)))


def expected_utility(
    utilities: np.ndarray,
    tactics_now: np.ndarray,
    tactics_previous: np.ndarray,
    sigma: float,
) -> np.ndarray:
    """Positional utilities scaled by one shared inertia probability.

    The move from the previous tactic matrix to the current one has a
    single realization probability, so every agent's payoff is multiplied
    by the same scalar.
    """
    q = inertia_probability(tactical_distance(tactics_now, tactics_previous), sigma)
    return np.asarray(utilities, dtype=float) * q


def intertemporal_utility(payoffs: np.ndarray, delta: float) -> np.ndarray:
    """Normalized discounted sum (1 - delta) * sum_t delta**t * p(t).

    ``payoffs`` holds one expected-utility vector per future step, the
    first row being one step ahead (the current state's payoff is never
    counted). The sum is a finite-horizon truncation; the omitted tail is
    bounded by delta**(H + 1) times the largest payoff, so a handful of
    steps suffices for any delta well inside (0, 1).
    """
    payoffs = np.asarray(payoffs, dtype=float)
    if payoffs.ndim == 1:
        payoffs = payoffs[:, np.newaxis] if payoffs.size else payoffs.reshape(0, 1)
    if payoffs.shape[0] == 0:
        raise ValueError("payoff sequence must contain at least one step")
    horizon = payoffs.shape[0]
    discounts = delta ** np.arange(1, horizon + 1)
    return (1.0 - delta) * (discounts @ payoffs)
