"""Round-by-round match execution, exact enumeration and Monte Carlo.

This module never touches the closed forms in :mod:`trustevo.payoffs`.  It
drives the behaviour machines of :mod:`trustevo.strategies` one round at a
time, which makes it the independent oracle for every analytic entry:

* :func:`play_match` rolls out one seeded match and returns the full trace.
* :func:`exact_expected_payoffs` integrates over every possible sequence of
  observation lotteries by dynamic programming, giving expectations that are
  exact up to float rounding.
* :func:`monte_carlo_payoffs` averages seeded rollouts and reports standard
  errors, as a statistical sanity layer on top of the other two.

Cost conventions
----------------
The closed forms treat one observation as free: when a trusting TUC's
randomly scheduled observation catches the opponent defecting, that round's
observation carries no cost.  ``CostConvention.DETECTION_FREE`` (the default
everywhere) reproduces that accounting.  ``CostConvention.EVERY_CHECK``
charges each observation uniformly; the two differ only in matches where a
trusting TUC actually catches a defection, by the detection probability
times the cost spread over the match.  The discrepancy is documented rather
than reconciled, and either convention can be requested explicitly.

Determinism
-----------
All randomness flows from numpy's PCG64 generator.  ``play_match`` with seed
``s`` consumes one ``(rounds, 2)`` block of uniforms, column 0 for the first
player, column 1 for the second.  ``monte_carlo_payoffs`` gives sample ``i``
its own generator seeded with ``SeedSequence((seed, i))``, so samples are
independent of how the loop is scheduled, and reduces in fixed sample order.
Identical seeds therefore give bitwise-identical results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .errors import ParameterDomainError, StateSpaceError
from .game_model import GameSpec
from .strategies import (
    Action,
    StrategyKind,
    StrategySpec,
    StrategyState,
    check_probability,
    decides_to_check,
    initial_state,
    next_action,
    observe,
)

# Joint-state budget for the exact enumeration.  Behaviourally distinct
# states stay in the single digits for the five supported kinds; hitting
# this limit means a bug, not a big computation.
_STATE_LIMIT = 256


class CostConvention(Enum):
    """How observation costs are charged; see the module docstring."""

    DETECTION_FREE = "detection_free"
    EVERY_CHECK = "every_check"


@dataclass(frozen=True)
class MatchOutcome:
    """Trace of one simulated match, with realized per-round payoffs."""

    actions_a: tuple[Action, ...]
    actions_b: tuple[Action, ...]
    checks_a: tuple[bool, ...]
    checks_b: tuple[bool, ...]
    payoffs_a: tuple[float, ...]
    payoffs_b: tuple[float, ...]
    convention: CostConvention

    @property
    def rounds(self) -> int:
        return len(self.actions_a)

    @property
    def payoff_a(self) -> float:
        return sum(self.payoffs_a) / self.rounds

    @property
    def payoff_b(self) -> float:
        return sum(self.payoffs_b) / self.rounds


@dataclass(frozen=True)
class MonteCarloPayoffs:
    """Sample means and standard errors of per-round match payoffs."""

    mean_a: float
    mean_b: float
    stderr_a: float
    stderr_b: float
    samples: int


def _payoff_table(game: GameSpec) -> dict:
    t, r, p, s = game.scaled_payoffs()
    c, d = Action.COOPERATE, Action.DEFECT
    return {(c, c): (r, r), (c, d): (s, t), (d, c): (t, s), (d, d): (p, p)}


def _charged(
    spec: StrategySpec,
    state: StrategyState,
    opponent_action: Action,
    convention: CostConvention,
) -> bool:
    """Whether this round's observation costs anything under the convention."""
    if convention is CostConvention.DETECTION_FREE:
        free = (
            spec.kind is StrategyKind.TUC
            and state.trusting
            and not state.reverted
            and opponent_action is Action.DEFECT
        )
        return not free
    return True


def _resolve_rounds(game: GameSpec, rounds: Optional[int]) -> int:
    if rounds is None:
        rounds = game.simulation_rounds()
    if not isinstance(rounds, int) or isinstance(rounds, bool) or rounds < 1:
        raise ParameterDomainError(f"rounds must be a positive integer, got {rounds!r}")
    return rounds


def _run_match(spec_a, spec_b, game, rounds, convention, draws, record):
    """Shared rollout core; ``draws`` is a rounds x 2 list of uniforms."""
    table = _payoff_table(game)
    eps = game.check_cost
    state_a = initial_state(spec_a)
    state_b = initial_state(spec_b)
    total_a = 0.0
    total_b = 0.0
    trace = ([], [], [], [], [], []) if record else None
    for i in range(rounds):
        act_a = next_action(spec_a, state_a)
        act_b = next_action(spec_b, state_b)
        pay_a, pay_b = table[act_a, act_b]
        row = draws[i]
        check_a = decides_to_check(spec_a, state_a, row[0])
        check_b = decides_to_check(spec_b, state_b, row[1])
        if check_a:
            if _charged(spec_a, state_a, act_b, convention):
                pay_a -= eps
            state_a = observe(spec_a, state_a, True, act_b)
        if check_b:
            if _charged(spec_b, state_b, act_a, convention):
                pay_b -= eps
            state_b = observe(spec_b, state_b, True, act_a)
        total_a += pay_a
        total_b += pay_b
        if record:
            trace[0].append(act_a)
            trace[1].append(act_b)
            trace[2].append(check_a)
            trace[3].append(check_b)
            trace[4].append(pay_a)
            trace[5].append(pay_b)
    return total_a / rounds, total_b / rounds, trace


def play_match(
    spec_a: StrategySpec,
    spec_b: StrategySpec,
    game: GameSpec,
    rounds: Optional[int] = None,
    convention: CostConvention = CostConvention.DETECTION_FREE,
    seed: int = 0,
) -> MatchOutcome:
    """Roll out one seeded match and return its full trace."""
    rounds = _resolve_rounds(game, rounds)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    draws = rng.random((rounds, 2)).tolist()
    _, _, trace = _run_match(spec_a, spec_b, game, rounds, convention, draws, True)
    return MatchOutcome(
        actions_a=tuple(trace[0]),
        actions_b=tuple(trace[1]),
        checks_a=tuple(trace[2]),
        checks_b=tuple(trace[3]),
        payoffs_a=tuple(trace[4]),
        payoffs_b=tuple(trace[5]),
        convention=convention,
    )


def monte_carlo_payoffs(
    spec_a: StrategySpec,
    spec_b: StrategySpec,
    game: GameSpec,
    rounds: Optional[int] = None,
    convention: CostConvention = CostConvention.DETECTION_FREE,
    samples: int = 1000,
    seed: int = 0,
) -> MonteCarloPayoffs:
    """Average seeded rollouts; sample i draws from SeedSequence((seed, i))."""
    rounds = _resolve_rounds(game, rounds)
    if samples < 1:
        raise ParameterDomainError(f"samples must be positive, got {samples}")
    means_a = np.empty(samples)
    means_b = np.empty(samples)
    for i in range(samples):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, i))))
        draws = rng.random((rounds, 2)).tolist()
        mean_a, mean_b, _ = _run_match(
            spec_a, spec_b, game, rounds, convention, draws, False
        )
        means_a[i] = mean_a
        means_b[i] = mean_b
    def stderr(x):
        if samples == 1:
            return 0.0
        return float(np.std(x, ddof=1) / math.sqrt(samples))
    return MonteCarloPayoffs(
        mean_a=float(np.mean(means_a)),
        mean_b=float(np.mean(means_b)),
        stderr_a=stderr(means_a),
        stderr_b=stderr(means_b),
        samples=samples,
    )


def _behaviour_key(spec: StrategySpec, state: StrategyState):
    """Collapse states that cannot differ in any future behaviour.

    Once ``trusting`` has latched, the trust ledger no longer influences
    actions or observation probabilities (reversion is triggered by a caught
    defection, not by the level), so the level is masked out of the key.
    Pre-trust levels stay in play because they decide when trust is reached.
    """
    level = 0 if state.trusting else state.trust_level
    return level, state.trusting, state.reverted, state.last_observed


def _branches(prob: float):
    if prob <= 0.0:
        return ((False, 1.0),)
    if prob >= 1.0:
        return ((True, 1.0),)
    return ((True, prob), (False, 1.0 - prob))


def exact_expected_payoffs(
    spec_a: StrategySpec,
    spec_b: StrategySpec,
    game: GameSpec,
    rounds: Optional[int] = None,
    convention: CostConvention = CostConvention.DETECTION_FREE,
) -> tuple[float, float]:
    """Exact expected per-round payoffs by enumerating observation lotteries.

    Maintains a probability distribution over joint behaviour states and
    advances it one round at a time, branching on each player's observation
    lottery.  Expected payoffs accumulate branch by branch, so the result is
    the exact expectation of :func:`play_match` over its random draws, up to
    float rounding.
    """
    rounds = _resolve_rounds(game, rounds)
    table = _payoff_table(game)
    eps = game.check_cost
    state_a = initial_state(spec_a)
    state_b = initial_state(spec_b)
    key0 = (_behaviour_key(spec_a, state_a), _behaviour_key(spec_b, state_b))
    population = {key0: (1.0, state_a, state_b)}
    total_a = 0.0
    total_b = 0.0
    for _ in range(rounds):
        successors = {}
        for prob, sa, sb in population.values():
            act_a = next_action(spec_a, sa)
            act_b = next_action(spec_b, sb)
            base_a, base_b = table[act_a, act_b]
            options_a = []
            for checks, weight in _branches(check_probability(spec_a, sa)):
                if checks:
                    cost = eps if _charged(spec_a, sa, act_b, convention) else 0.0
                    options_a.append((weight, base_a - cost, observe(spec_a, sa, True, act_b)))
                else:
                    options_a.append((weight, base_a, sa))
            options_b = []
            for checks, weight in _branches(check_probability(spec_b, sb)):
                if checks:
                    cost = eps if _charged(spec_b, sb, act_a, convention) else 0.0
                    options_b.append((weight, base_b - cost, observe(spec_b, sb, True, act_a)))
                else:
                    options_b.append((weight, base_b, sb))
            for wa, pay_a, sa2 in options_a:
                for wb, pay_b, sb2 in options_b:
                    w = prob * wa * wb
                    total_a += w * pay_a
                    total_b += w * pay_b
                    key = (_behaviour_key(spec_a, sa2), _behaviour_key(spec_b, sb2))
                    hit = successors.get(key)
                    if hit is None:
                        successors[key] = (w, sa2, sb2)
                    else:
                        successors[key] = (hit[0] + w, hit[1], hit[2])
        if len(successors) > _STATE_LIMIT:
            raise StateSpaceError(
                f"joint state count {len(successors)} exceeded the budget; "
                "the behaviour key has stopped collapsing states"
            )
        population = successors
    return total_a / rounds, total_b / rounds
