"""Non-temporal multi-preferential interpretations.

A :class:`PreferentialInterpretation` has a finite world set, a valuation of
propositions at worlds, and one strict order per formula key.  Preferences are
either stored (explicit), read off the formula's own degrees (coherent: more
is preferred), or read off the weights of a set of weighted conditionals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .algebra import GOEDEL, ONE, ZERO, Algebra, Degree, degree
from .errors import MissingPreferenceError, MissingPropError, TemporalOperatorError, UnknownWorldError
from .formulas import (
    TEMPORAL_TYPES,
    And,
    Bot,
    Cmp,
    Formula,
    GradedImplication,
    Implies,
    Not,
    Or,
    Prop,
    Top,
    Typ,
    WeightedConditional,
    formula_key,
)
from .preferences import PrefMode, is_modular, minimal_worlds, order_by_score, validate_strict_order


@dataclass(frozen=True)
class PreferentialInterpretation:
    worlds: tuple[str, ...]
    valuation: Mapping[tuple[str, str], Fraction]
    prefs: Mapping[str, frozenset] = field(default_factory=dict)
    pref_mode: PrefMode = PrefMode.EXPLICIT
    conditionals: tuple[WeightedConditional, ...] = ()

    def __post_init__(self):
        worlds = tuple(self.worlds)
        if not worlds:
            raise ValueError("an interpretation needs at least one world")
        if len(set(worlds)) != len(worlds):
            raise ValueError("duplicate world names")
        object.__setattr__(self, "worlds", worlds)
        val = {}
        for (w, p), d in self.valuation.items():
            if w not in worlds:
                raise UnknownWorldError(f"valuation mentions unknown world {w!r}")
            val[(w, p)] = degree(d)
        object.__setattr__(self, "valuation", val)
        prefs = {k: validate_strict_order(rel, worlds, k) for k, rel in self.prefs.items()}
        object.__setattr__(self, "prefs", prefs)
        object.__setattr__(self, "conditionals", tuple(self.conditionals))

    def value(self, world: str, prop: str) -> Degree:
        try:
            return self.valuation[(world, prop)]
        except KeyError:
            if world not in self.worlds:
                raise UnknownWorldError(f"unknown world {world!r}") from None
            raise MissingPropError(f"no value for {prop!r} at world {world!r}") from None

    def props(self) -> set[str]:
        return {p for (_, p) in self.valuation}


class Evaluator:
    """Memoizing evaluator for one model and one algebra."""

    def __init__(self, model: PreferentialInterpretation, alg: Algebra):
        self.m = model
        self.alg = alg
        self.cache: dict[tuple[Formula, str], Degree] = {}
        self.typical: dict[str, set[str]] = {}

    def value(self, w: str, f: Formula) -> Degree:
        key = (f, w)
        if key not in self.cache:
            self.cache[key] = self._value(w, f)
        return self.cache[key]

    def _value(self, w: str, f: Formula) -> Degree:
        alg = self.alg
        t = type(f)
        if t is Prop:
            return self.m.value(w, f.name)
        if t is Top:
            return ONE
        if t is Bot:
            return ZERO
        if t is Not:
            return alg.negation(self.value(w, f.arg))
        if t is And:
            return alg.tnorm(self.value(w, f.left), self.value(w, f.right))
        if t is Or:
            return alg.snorm(self.value(w, f.left), self.value(w, f.right))
        if t is Implies:
            return alg.implication(self.value(w, f.left), self.value(w, f.right))
        if t is Typ:
            v = self.value(w, f.arg)
            return v if w in self.typical_worlds(f.arg) else ZERO
        if isinstance(f, TEMPORAL_TYPES):
            raise TemporalOperatorError(f"temporal operator in non-temporal evaluation: {f}")
        raise TypeError(f"not a formula: {f!r}")

    def degree(self, f: Formula, g: Formula) -> Degree:
        return min(self.alg.implication(self.value(w, f), self.value(w, g)) for w in self.m.worlds)

    def typical_worlds(self, subject: Formula) -> set[str]:
        key = formula_key(subject)
        if key not in self.typical:
            rel = self.relation(subject)
            self.typical[key] = minimal_worlds(rel, self.m.worlds)
        return self.typical[key]

    def relation(self, subject: Formula) -> frozenset:
        key = formula_key(subject)
        mode = self.m.pref_mode
        if mode is PrefMode.EXPLICIT:
            try:
                return self.m.prefs[key]
            except KeyError:
                raise MissingPreferenceError(f"no preference relation for {key!r}") from None
        if mode is PrefMode.COHERENT:
            return order_by_score({w: self.value(w, subject) for w in self.m.worlds})
        conds = [c for c in self.m.conditionals if c.key == key]
        if not conds:
            raise MissingPreferenceError(f"{key!r} is not distinguished by any weighted conditional")
        return order_by_score(
            {w: sum((c.weight * self.value(w, c.consequent) for c in conds), Fraction(0)) for w in self.m.worlds}
        )


def evaluate(model: PreferentialInterpretation, world: str, f: Formula, alg: Algebra = GOEDEL) -> Degree:
    """Degree of ``f`` at ``world``."""
    if world not in model.worlds:
        raise UnknownWorldError(f"unknown world {world!r}")
    return Evaluator(model, alg).value(world, f)


def preference_relation(model: PreferentialInterpretation, subject: Formula, alg: Algebra = GOEDEL) -> frozenset:
    """The strict order ``<_subject`` in effect, whatever the preference mode."""
    return Evaluator(model, alg).relation(subject)


def implication_degree(model: PreferentialInterpretation, f: Formula, g: Formula, alg: Algebra = GOEDEL) -> Degree:
    """``(f -> g)`` in the model: minimum over worlds of ``v(w,f) |> v(w,g)``."""
    return Evaluator(model, alg).degree(f, g)


def compare(value: Degree, cmp: Cmp, threshold: Degree) -> bool:
    return value >= threshold if cmp is Cmp.GE else value <= threshold


def satisfies(model: PreferentialInterpretation, gi: GradedImplication, alg: Algebra = GOEDEL) -> bool:
    return compare(implication_degree(model, gi.lhs, gi.rhs, alg), gi.cmp, gi.threshold)


def implication_formula(gi: GradedImplication) -> Implies:
    return Implies(gi.lhs, gi.rhs)


# ---------------------------------------------------------------- coherence


@dataclass
class CoherenceEntry:
    key: str
    # v(w,A) > v(w',A) but not w <_A w'
    faithfulness_violations: list[tuple[str, str]]
    # w <_A w' but not v(w,A) > v(w',A)
    coherence_violations: list[tuple[str, str]]
    modular: bool

    @property
    def faithful(self) -> bool:
        return not self.faithfulness_violations

    @property
    def coherent(self) -> bool:
        return self.faithful and not self.coherence_violations

    def classification(self) -> str:
        if self.coherent:
            return "coherent"
        if self.faithful:
            return "faithful"
        return "neither"


@dataclass
class CoherenceReport:
    entries: list[CoherenceEntry]

    @property
    def coherent(self) -> bool:
        return all(e.coherent for e in self.entries)

    @property
    def faithful(self) -> bool:
        return all(e.faithful for e in self.entries)

    def entry(self, key: str) -> CoherenceEntry:
        for e in self.entries:
            if e.key == key:
                return e
        raise KeyError(key)

    def lines(self) -> list[str]:
        out = []
        for e in self.entries:
            out.append(f'KEY "{e.key}" {e.classification().upper()} modular={str(e.modular).lower()}')
            out += [f"  FAITHFULNESS-VIOLATION {a} {b}" for a, b in e.faithfulness_violations]
            out += [f"  COHERENCE-VIOLATION {a} {b}" for a, b in e.coherence_violations]
        return out


def _coherence_entry(key, rel, scores, worlds) -> CoherenceEntry:
    forward, backward = [], []
    for a in worlds:
        for b in worlds:
            higher = scores[a] > scores[b]
            related = (a, b) in rel
            if higher and not related:
                forward.append((a, b))
            elif related and not higher:
                backward.append((a, b))
    return CoherenceEntry(key, forward, backward, is_modular(rel, worlds))


def check_coherence(
    model: PreferentialInterpretation,
    subjects: Optional[Sequence[Formula]] = None,
    alg: Algebra = GOEDEL,
) -> CoherenceReport:
    """Classify each preference relation as coherent, merely faithful, or neither.

    ``subjects`` defaults to the formulas whose keys have stored relations
    (the keys are parsed back into formulas).
    """
    from .parser import parse_formula

    if subjects is None:
        subjects = [parse_formula(k) for k in sorted(model.prefs)]
    ev = Evaluator(model, alg)
    entries = []
    for subject in subjects:
        rel = ev.relation(subject)
        scores = {w: ev.value(w, subject) for w in model.worlds}
        entries.append(_coherence_entry(formula_key(subject), rel, scores, model.worlds))
    return CoherenceReport(entries)
