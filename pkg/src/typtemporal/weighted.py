"""Weighted temporal knowledge bases and the preferences they induce.

The weight of world ``x`` for a distinguished subject ``A`` at time ``n`` is
the sum of ``w * v(n, x, B)`` over the conditionals ``(T(A) -> B, w)``.  A
model agrees with the KB when, at every time point, ``x <_A y`` holds exactly
when ``x`` weighs strictly more than ``y``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .algebra import GOEDEL, Algebra
from .formulas import Formula, GradedFormula, WeightedConditional, print_graded
from .parser import parse_formula
from .preferences import order_by_score
from .temporal import TemporalEvaluator, TemporalInterpretation, world_weights


@dataclass(frozen=True)
class WeightedKB:
    strict: tuple[GradedFormula, ...] = ()
    weighted: tuple[WeightedConditional, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "strict", tuple(self.strict))
        object.__setattr__(self, "weighted", tuple(self.weighted))

    @property
    def distinguished(self) -> list[str]:
        """Keys of the subjects of weighted conditionals, in first-seen order."""
        return list(dict.fromkeys(c.key for c in self.weighted))

    def subject(self, key: str) -> Formula:
        for c in self.weighted:
            if c.key == key:
                return c.subject
        raise KeyError(key)

    def conditionals_for(self, key: str) -> list[WeightedConditional]:
        return [c for c in self.weighted if c.key == key]


def world_weight(
    I: TemporalInterpretation, K: WeightedKB, key: str, n: int, x: str, alg: Algebra = GOEDEL
) -> Fraction:
    """Weight of world ``x`` for subject ``key`` at time ``n`` (0 with no conditionals)."""
    if isinstance(key, Formula):
        key = str(key)
    else:
        key = str(parse_formula(key))
    ev = TemporalEvaluator(I, alg)
    return world_weights(ev, K.conditionals_for(key), I.position(n))[x]


def derive_preferences(I: TemporalInterpretation, K: WeightedKB, alg: Algebra = GOEDEL) -> dict[tuple[int, str], frozenset]:
    """``{(position, key): relation}`` for every distinguished key and lasso position."""
    ev = TemporalEvaluator(I, alg)
    out = {}
    for key in K.distinguished:
        conds = K.conditionals_for(key)
        for pos in range(I.positions):
            out[(pos, key)] = order_by_score(world_weights(ev, conds, pos))
    return out


def install_preferences(I: TemporalInterpretation, K: WeightedKB, alg: Algebra = GOEDEL) -> TemporalInterpretation:
    """Explicit-mode copy of ``I`` whose distinguished relations are the KB-derived ones."""
    prefs = dict(I.prefs)
    prefs.update(derive_preferences(I, K, alg))
    return I.with_prefs(prefs)


@dataclass(frozen=True)
class Mismatch:
    time: int
    key: str
    pair: tuple[str, str]
    # "missing": derived but not in the model; "extra": in the model but not derived
    kind: str

    def line(self) -> str:
        return f'MISMATCH t={self.time} key="{self.key}" {self.pair[0]} {self.pair[1]}'


@dataclass
class WeightedReport:
    mismatches: list[Mismatch] = field(default_factory=list)
    strict_results: list[tuple[GradedFormula, bool]] = field(default_factory=list)

    @property
    def strict_violations(self) -> list[GradedFormula]:
        return [a for a, ok in self.strict_results if not ok]

    @property
    def preferences_agree(self) -> bool:
        return not self.mismatches

    @property
    def satisfied(self) -> bool:
        return self.preferences_agree and not self.strict_violations

    def lines(self) -> list[str]:
        out = [f"{'SAT' if ok else 'UNSAT'} {print_graded(a)}" for a, ok in self.strict_results]
        out += [m.line() for m in self.mismatches]
        return out


def check_weighted_satisfaction(
    I: TemporalInterpretation, K: WeightedKB, alg: Algebra = GOEDEL, ev: Optional[TemporalEvaluator] = None
) -> WeightedReport:
    """Compare the model's relations for distinguished keys with the KB-derived ones.

    The relation in effect is used whatever the model's preference mode, so a
    coherent-mode model is checked against the weights too.  Strict formulas
    are evaluated at time 0.
    """
    ev = ev or TemporalEvaluator(I, alg)
    report = WeightedReport()
    for key in K.distinguished:
        conds = K.conditionals_for(key)
        subject = K.subject(key)
        for pos in range(I.positions):
            derived = order_by_score(world_weights(ev, conds, pos))
            actual = ev.relation(subject, pos)
            for pair in sorted(derived - actual):
                report.mismatches.append(Mismatch(pos, key, pair, "missing"))
            for pair in sorted(actual - derived):
                report.mismatches.append(Mismatch(pos, key, pair, "extra"))
    for alpha in K.strict:
        report.strict_results.append((alpha, ev.sat(alpha, 0)))
    return report
