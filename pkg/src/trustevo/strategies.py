"""Behaviour machines for the five repeated-game strategies.

Besides the three classics (unconditional cooperation, unconditional
defection, tit-for-tat with paid observation every round) the package models
two trust-based strategies parameterised by a trust threshold theta and, for
the conditional one, a post-trust observation probability p:

* TUC, trust-until-caught: plays tit-for-tat and observes every round until
  the opponent's net cooperation record reaches theta, then cooperates on
  trust and only observes with probability p per round.  Catching a
  defection while trusting destroys the trust permanently; from then on the
  strategy behaves like tit-for-tat with observation every round.
* TUD, trust-then-defect: identical bookkeeping until trust is reached, then
  exploits it by defecting for the rest of the match without ever paying
  for observation again.

All strategies keep the same observation ledger: ``trust_level`` is the
number of observed cooperations minus observed defections, counted only over
rounds in which the player actually observed.  State transitions are pure
functions; callers thread :class:`StrategyState` values through a match.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

from .errors import ContractViolationError, ParameterDomainError


class Action(Enum):
    COOPERATE = "C"
    DEFECT = "D"


class StrategyKind(Enum):
    ALLC = "ALLC"
    ALLD = "ALLD"
    TFT = "TFT"
    TUC = "TUC"
    TUD = "TUD"


TRUST_KINDS = frozenset({StrategyKind.TUC, StrategyKind.TUD})


@dataclass(frozen=True)
class StrategySpec:
    """A strategy kind plus its trust parameters where applicable.

    ``trust_threshold`` (theta, a positive integer) and ``check_prob``
    (p in [0, 1]) are required for TUC; TUD takes only the threshold; the
    three classic strategies take neither.
    """

    kind: StrategyKind
    trust_threshold: Optional[int] = None
    check_prob: Optional[float] = None

    def __post_init__(self) -> None:
        if self.kind in TRUST_KINDS:
            t = self.trust_threshold
            if not isinstance(t, int) or isinstance(t, bool) or t < 1:
                raise ParameterDomainError(
                    f"{self.kind.value} needs an integer trust_threshold >= 1, got {t!r}"
                )
        else:
            if self.trust_threshold is not None:
                raise ParameterDomainError(
                    f"{self.kind.value} takes no trust_threshold"
                )
        if self.kind is StrategyKind.TUC:
            p = self.check_prob
            if p is None or not 0.0 <= p <= 1.0:
                raise ParameterDomainError(
                    f"TUC needs check_prob in [0, 1], got {p!r}"
                )
        else:
            if self.check_prob is not None:
                raise ParameterDomainError(f"{self.kind.value} takes no check_prob")

    @property
    def label(self) -> str:
        return self.kind.value


ALLC = StrategySpec(StrategyKind.ALLC)
ALLD = StrategySpec(StrategyKind.ALLD)
TFT = StrategySpec(StrategyKind.TFT)


def tuc(trust_threshold: int, check_prob: float) -> StrategySpec:
    return StrategySpec(StrategyKind.TUC, trust_threshold, check_prob)


def tud(trust_threshold: int) -> StrategySpec:
    return StrategySpec(StrategyKind.TUD, trust_threshold)


class StrategyState(NamedTuple):
    """Per-match bookkeeping carried between rounds.

    ``trusting`` latches on once the level reaches the threshold and never
    clears; a caught defection sets ``reverted`` instead of clearing it.
    ``last_observed`` is None until the first observed round.
    """

    trust_level: int
    trusting: bool
    reverted: bool
    last_observed: Optional[Action]


def initial_state(spec: StrategySpec) -> StrategyState:
    return StrategyState(0, False, False, None)


def next_action(spec: StrategySpec, state: StrategyState) -> Action:
    """Action the strategy plays this round given its current state."""
    kind = spec.kind
    if kind is StrategyKind.ALLC:
        return Action.COOPERATE
    if kind is StrategyKind.ALLD:
        return Action.DEFECT
    if kind is StrategyKind.TUC:
        if state.trusting and not state.reverted:
            return Action.COOPERATE
        return _tit_for_tat(state)
    if kind is StrategyKind.TUD:
        if state.trusting:
            return Action.DEFECT
        return _tit_for_tat(state)
    return _tit_for_tat(state)


def _tit_for_tat(state: StrategyState) -> Action:
    if state.last_observed is Action.DEFECT:
        return Action.DEFECT
    return Action.COOPERATE


def check_probability(spec: StrategySpec, state: StrategyState) -> float:
    """Probability that the strategy observes the opponent this round.

    Unconditional strategies never observe.  Tit-for-tat observes every
    round, as do TUC and TUD before trust is reached and TUC after a caught
    defection.  A trusting TUC observes with probability p; a trusting TUD
    never observes again.
    """
    kind = spec.kind
    if kind is StrategyKind.ALLC or kind is StrategyKind.ALLD:
        return 0.0
    if kind is StrategyKind.TUC:
        if state.trusting and not state.reverted:
            return spec.check_prob
        return 1.0
    if kind is StrategyKind.TUD:
        return 0.0 if state.trusting else 1.0
    return 1.0


def decides_to_check(spec: StrategySpec, state: StrategyState, draw: float) -> bool:
    """Resolve this round's observation decision with a uniform [0, 1) draw."""
    return draw < check_probability(spec, state)


def observe(
    spec: StrategySpec,
    state: StrategyState,
    checked: bool,
    opponent_action: Action,
) -> StrategyState:
    """Update state after an observed round.

    Must only be called for rounds the player actually observed; the trust
    ledger counts observed actions exclusively.
    """
    if not checked:
        raise ContractViolationError("observe() called for an unobserved round")
    cooperated = opponent_action is Action.COOPERATE
    level = state.trust_level + (1 if cooperated else -1)
    trusting = state.trusting
    if (
        not trusting
        and spec.kind in TRUST_KINDS
        and level >= spec.trust_threshold
    ):
        trusting = True
    reverted = state.reverted or (
        spec.kind is StrategyKind.TUC and state.trusting and not cooperated
    )
    return StrategyState(level, trusting, reverted, opponent_action)


def strategy_from_label(
    label: str,
    trust_threshold: int = 3,
    check_prob: float = 0.25,
) -> StrategySpec:
    """Build a spec from its CLI label, attaching trust parameters as needed."""
    try:
        kind = StrategyKind(label.upper())
    except ValueError:
        valid = ", ".join(k.value for k in StrategyKind)
        raise ParameterDomainError(
            f"unknown strategy {label!r}, expected one of {valid}"
        ) from None
    if kind is StrategyKind.TUC:
        return tuc(trust_threshold, check_prob)
    if kind is StrategyKind.TUD:
        return tud(trust_threshold)
    return StrategySpec(kind)
