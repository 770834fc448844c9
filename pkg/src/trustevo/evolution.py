"""Imitation dynamics in the small-mutation limit.

A well-mixed population of N players updates by pairwise comparison: a focal
player copies a random role model with the Fermi probability
``1 / (1 + exp(-beta * (f_model - f_focal)))``.  With rare mutations the
population is homogeneous almost always, so evolution reduces to a Markov
chain over the homogeneous states whose transitions are single-mutant
fixation probabilities.  This module computes those fixation probabilities
in closed form, assembles the chain, and solves for its stationary
distribution.

Fixation probabilities use the standard birth-death identity: the backward
to forward rate ratio at k mutants reduces to ``exp(-beta * delta(k))`` with
``delta`` the payoff advantage of the mutant, so the fixation probability is
``1 / (1 + sum_i exp(-beta * cumsum(delta)_i))``.  The sum is evaluated
directly when safe (which keeps neutral cases exact) and in log space when
the exponents are large.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import NumericalError, ParameterDomainError

# Largest exponent fed to exp() before the fixation sum switches to its
# log-space evaluation; exp overflows near 709.
_EXP_GUARD = 700.0


@dataclass(frozen=True)
class EvolutionParams:
    """Population size N >= 2 and imitation selection strength beta >= 0."""

    population_size: int
    selection_strength: float

    def __post_init__(self) -> None:
        n = self.population_size
        if not isinstance(n, int) or isinstance(n, bool) or n < 2:
            raise ParameterDomainError(
                f"population_size must be an integer >= 2, got {n!r}"
            )
        if self.selection_strength < 0:
            raise ParameterDomainError(
                f"selection_strength must be non-negative, got {self.selection_strength}"
            )


@dataclass
class StationaryDistribution:
    """Stationary probabilities over homogeneous states, with labels."""

    labels: tuple[str, ...]
    probabilities: np.ndarray

    def as_dict(self) -> dict[str, float]:
        return {l: float(p) for l, p in zip(self.labels, self.probabilities)}


def group_payoffs(
    values: np.ndarray, a: int, b: int, k: int, n: int
) -> tuple[float, float]:
    """Average payoffs of an A and a B player with k A-players among n.

    Self-interaction is excluded, so each player averages the match payoff
    over the other n - 1 members of the population.
    """
    if not 1 <= k <= n - 1:
        raise ParameterDomainError(f"k must lie in [1, {n - 1}], got {k}")
    pi_a = ((k - 1) * values[a, a] + (n - k) * values[a, b]) / (n - 1)
    pi_b = (k * values[b, a] + (n - k - 1) * values[b, b]) / (n - 1)
    return float(pi_a), float(pi_b)


def fermi_probability(payoff_diff: float, beta: float) -> float:
    """Probability of imitating a role model whose payoff is higher by diff."""
    x = beta * payoff_diff
    if x >= 0:
        return 1.0 / (1.0 + np.exp(-x))
    e = np.exp(x)
    return float(e / (1.0 + e))


def transition_probabilities(
    values: np.ndarray, a: int, b: int, k: int, params: EvolutionParams
) -> tuple[float, float]:
    """Per-step probabilities that the count of A-players rises or falls."""
    n = params.population_size
    beta = params.selection_strength
    pi_a, pi_b = group_payoffs(values, a, b, k, n)
    pick = (n - k) * k / (n * n)
    gain = pick * fermi_probability(pi_a - pi_b, beta)
    loss = pick * fermi_probability(pi_b - pi_a, beta)
    return gain, loss


def _advantage_sums(
    values: np.ndarray, mutant: int, resident: int, params: EvolutionParams
) -> np.ndarray:
    n = params.population_size
    deltas = np.empty(n - 1)
    for k in range(1, n):
        pi_m, pi_r = group_payoffs(values, mutant, resident, k, n)
        deltas[k - 1] = pi_m - pi_r
    return np.cumsum(deltas)


def fixation_probability(
    values: np.ndarray, mutant: int, resident: int, params: EvolutionParams
) -> float:
    """Probability that a single mutant takes over a resident population."""
    args = -params.selection_strength * _advantage_sums(
        values, mutant, resident, params
    )
    peak = float(np.max(args))
    if peak < _EXP_GUARD:
        # Direct evaluation; in the neutral case every term is exactly 1,
        # so the result is exactly 1/N.
        return 1.0 / (1.0 + float(np.sum(np.exp(args))))
    log_sum = peak + np.log(np.sum(np.exp(args - peak)))
    return float(np.exp(-np.logaddexp(0.0, log_sum)))


def markov_transition_matrix(
    values: np.ndarray, params: EvolutionParams
) -> np.ndarray:
    """Small-mutation chain over homogeneous states.

    Row i is the resident strategy; entry (i, j) is the fixation probability
    of a j-mutant in an i-resident population divided by the number of
    possible mutants, so each row sums to one with the remainder on the
    diagonal.
    """
    size = values.shape[0]
    if values.shape != (size, size) or size < 2:
        raise ParameterDomainError(
            f"need a square payoff table with at least two strategies, got {values.shape}"
        )
    matrix = np.zeros((size, size))
    for i in range(size):
        for j in range(size):
            if i == j:
                continue
            matrix[i, j] = fixation_probability(values, j, i, params) / (size - 1)
        matrix[i, i] = 1.0 - matrix[i].sum()
    return matrix


def stationary_distribution(
    transition: np.ndarray, labels: Optional[Sequence[str]] = None
) -> StationaryDistribution:
    """Left fixed vector of a row-stochastic matrix via a dense linear solve.

    One balance equation is replaced by normalisation.  Entries more negative
    than -1e-12 or a solve residual above 1e-9 raise ``NumericalError`` with
    the condition number attached; roundoff-scale negatives are clamped to
    zero and the vector renormalised.
    """
    transition = np.asarray(transition, dtype=float)
    size = transition.shape[0]
    if transition.shape != (size, size) or size < 1:
        raise ParameterDomainError(f"transition table must be square, got {transition.shape}")
    rows = transition.sum(axis=1)
    if np.any(np.abs(rows - 1.0) > 1e-12):
        raise ParameterDomainError("transition rows must each sum to 1 within 1e-12")
    if labels is None:
        labels = tuple(str(i) for i in range(size))
    else:
        labels = tuple(labels)
        if len(labels) != size:
            raise ParameterDomainError(
                f"got {len(labels)} labels for a {size}-state chain"
            )

    system = transition.T - np.eye(size)
    system[-1, :] = 1.0
    rhs = np.zeros(size)
    rhs[-1] = 1.0
    try:
        pi = np.linalg.solve(system, rhs)
    except np.linalg.LinAlgError as exc:
        cond = np.linalg.cond(transition.T - np.eye(size) + np.ones((size, size)) / size)
        raise NumericalError(
            f"stationary solve failed ({exc}); condition estimate {cond:.3e}; "
            "the chain may be reducible"
        ) from exc
    residual = float(np.max(np.abs(transition.T @ pi - pi)))
    lowest = float(pi.min())
    if residual > 1e-9 or lowest < -1e-12:
        cond = float(np.linalg.cond(system))
        raise NumericalError(
            f"stationary solve untrustworthy (residual {residual:.3e}, "
            f"min entry {lowest:.3e}, condition {cond:.3e}); "
            "the chain may be reducible"
        )
    pi = np.clip(pi, 0.0, None)
    pi /= pi.sum()
    return StationaryDistribution(labels, pi)


def stationary_distribution_power(
    transition: np.ndarray,
    tolerance: float = 1e-14,
    max_iterations: int = 1_000_000,
) -> np.ndarray:
    """Power iteration from the uniform vector; kept as a cross-check oracle."""
    transition = np.asarray(transition, dtype=float)
    size = transition.shape[0]
    pi = np.full(size, 1.0 / size)
    for _ in range(max_iterations):
        nxt = pi @ transition
        nxt /= nxt.sum()
        if float(np.abs(nxt - pi).max()) < tolerance:
            return nxt
        pi = nxt
    raise NumericalError(
        f"power iteration did not converge within {max_iterations} iterations"
    )


def simulate_fixation(
    values: np.ndarray,
    mutant: int,
    resident: int,
    params: EvolutionParams,
    runs: int = 10_000,
    seed: int = 0,
) -> float:
    """Observed fixation frequency of a single mutant over seeded runs.

    Plays the embedded jump chain of the imitation process: waiting rounds
    in which the mutant count does not change have no effect on which
    absorbing state is reached, so each step moves up with probability
    ``gain / (gain + loss)``, which is the Fermi probability itself.  All
    runs advance in lockstep on vectorised draws, one uniform per run per
    step, so a fixed seed gives identical frequencies on every platform.
    """
    if runs < 1:
        raise ParameterDomainError(f"runs must be positive, got {runs}")
    n = params.population_size
    beta = params.selection_strength
    up = np.empty(n + 1)
    for k in range(1, n):
        pi_m, pi_r = group_payoffs(values, mutant, resident, k, n)
        up[k] = fermi_probability(pi_m - pi_r, beta)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    counts = np.ones(runs, dtype=np.int64)
    # Absorption from one mutant takes O(N) jumps in expectation; the cap
    # only exists to turn a logic error into a loud failure.
    for _ in range(1000 * n * n + 100_000):
        active = (counts > 0) & (counts < n)
        if not active.any():
            return float(np.mean(counts == n))
        draws = rng.random(runs)
        step = np.where(draws < up[np.clip(counts, 1, n - 1)], 1, -1)
        counts = np.where(active, counts + step, counts)
    raise NumericalError("fixation simulation failed to absorb all runs")
