"""Abstract syntax for object formulas and temporal graded formulas.

All nodes are frozen dataclasses, so formulas are hashable and can be used as
cache keys during evaluation.  ``str(f)`` gives the canonical printed form,
which the parser reads back to an equal tree.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .algebra import format_degree
from .errors import NestedTypicalityError, ThresholdRangeError


class Formula:
    """Base class of object-level formulas."""

    __slots__ = ()

    def children(self) -> tuple["Formula", ...]:
        return ()

    def __str__(self):
        return print_formula(self)


@dataclass(frozen=True)
class Prop(Formula):
    name: str


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Typ(Formula):
    """Typicality ``T(arg)``; nesting is rejected at construction."""

    arg: Formula

    def __post_init__(self):
        if has_typicality(self.arg):
            raise NestedTypicalityError("the typicality operator cannot be nested")

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Next(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Eventually(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Always(Formula):
    arg: Formula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class Until(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


def _check_bound(bound):
    if not isinstance(bound, int) or bound < 0:
        raise ValueError(f"temporal bound must be a non-negative integer, got {bound!r}")


@dataclass(frozen=True)
class BoundedEventually(Formula):
    bound: int
    arg: Formula

    def __post_init__(self):
        _check_bound(self.bound)

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class BoundedAlways(Formula):
    bound: int
    arg: Formula

    def __post_init__(self):
        _check_bound(self.bound)

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class BoundedUntil(Formula):
    bound: int
    left: Formula
    right: Formula

    def __post_init__(self):
        _check_bound(self.bound)

    def children(self):
        return (self.left, self.right)


TOP = Top()
BOT = Bot()

TEMPORAL_TYPES = (Next, Eventually, Always, Until, BoundedEventually, BoundedAlways, BoundedUntil)
UNBOUNDED_TYPES = (Eventually, Always, Until)


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order traversal of ``f`` including ``f`` itself."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(g.children()))


def has_typicality(f: Formula) -> bool:
    return any(isinstance(g, Typ) for g in subformulas(f))


def is_temporal(f: Formula) -> bool:
    return any(isinstance(g, TEMPORAL_TYPES) for g in subformulas(f))


def props_of(f: Formula) -> set[str]:
    return {g.name for g in subformulas(f) if isinstance(g, Prop)}


def typicality_subjects(f: Formula) -> list[Formula]:
    """Arguments of every ``T(...)`` in ``f``, first occurrence order, deduplicated by key."""
    seen = {}
    for g in subformulas(f):
        if isinstance(g, Typ):
            seen.setdefault(formula_key(g.arg), g.arg)
    return list(seen.values())


# ---------------------------------------------------------------- printing

_UNARY_PREFIX = {Next: "X", Eventually: "F", Always: "G"}
_BOUNDED_PREFIX = {BoundedEventually: "F", BoundedAlways: "G"}
_BINARY_OP = {And: "&", Or: "|", Implies: "->", Until: "U"}


def print_formula(f: Formula) -> str:
    """Canonical text: binary nodes are always parenthesized."""
    t = type(f)
    if t is Prop:
        return f.name
    if t is Top:
        return "top"
    if t is Bot:
        return "bot"
    if t is Not:
        return "~" + print_formula(f.arg)
    if t is Typ:
        inner = print_formula(f.arg)
        if isinstance(f.arg, (And, Or, Implies, Until, BoundedUntil)):
            inner = inner[1:-1]
        return f"T({inner})"
    if t in _UNARY_PREFIX:
        return f"{_UNARY_PREFIX[t]} {print_formula(f.arg)}"
    if t in _BOUNDED_PREFIX:
        return f"{_BOUNDED_PREFIX[t]}[{f.bound}] {print_formula(f.arg)}"
    if t in _BINARY_OP:
        return f"({print_formula(f.left)} {_BINARY_OP[t]} {print_formula(f.right)})"
    if t is BoundedUntil:
        return f"({print_formula(f.left)} U[{f.bound}] {print_formula(f.right)})"
    raise TypeError(f"not a formula: {f!r}")


def formula_key(f: Formula) -> str:
    """Index of the preference relation attached to ``f``.

    Keys are syntactic: ``a & b`` and ``b & a`` get different relations.
    """
    return print_formula(f)


# ---------------------------------------------------------- graded formulas


class Cmp(enum.Enum):
    GE = ">="
    LE = "<="


class GradedFormula:
    """Base class of temporal graded formulas (two-valued, meta level)."""

    __slots__ = ()

    def children(self) -> tuple["GradedFormula", ...]:
        return ()

    def __str__(self):
        return print_graded(self)


@dataclass(frozen=True)
class GradedImplication(GradedFormula):
    """``(lhs -> rhs) >= threshold`` or ``(lhs -> rhs) <= threshold``."""

    lhs: Formula
    rhs: Formula
    cmp: Cmp
    threshold: Fraction

    def __post_init__(self):
        t = Fraction(self.threshold)
        if not 0 <= t <= 1:
            raise ThresholdRangeError(f"threshold {t} is outside [0, 1]")
        object.__setattr__(self, "threshold", t)


@dataclass(frozen=True)
class MetaAnd(GradedFormula):
    left: GradedFormula
    right: GradedFormula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class MetaNot(GradedFormula):
    arg: GradedFormula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class MetaNext(GradedFormula):
    arg: GradedFormula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class MetaEventually(GradedFormula):
    arg: GradedFormula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class MetaAlways(GradedFormula):
    arg: GradedFormula

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class MetaUntil(GradedFormula):
    left: GradedFormula
    right: GradedFormula

    def children(self):
        return (self.left, self.right)


def graded_leaves(alpha: GradedFormula) -> Iterator[GradedImplication]:
    stack = [alpha]
    while stack:
        g = stack.pop()
        if isinstance(g, GradedImplication):
            yield g
        else:
            stack.extend(reversed(g.children()))


def graded_object_formulas(alpha: GradedFormula) -> Iterator[Formula]:
    for leaf in graded_leaves(alpha):
        yield leaf.lhs
        yield leaf.rhs


_META_PREFIX = {MetaNext: "X", MetaEventually: "F", MetaAlways: "G"}


def print_graded(alpha: GradedFormula) -> str:
    t = type(alpha)
    if t is GradedImplication:
        lhs = print_formula(alpha.lhs)
        rhs = print_formula(alpha.rhs)
        return f"({lhs} -> {rhs}) {alpha.cmp.value} {format_degree(alpha.threshold)}"
    if t is MetaNot:
        return "~" + print_graded(alpha.arg)
    if t in _META_PREFIX:
        return f"{_META_PREFIX[t]} {print_graded(alpha.arg)}"
    if t is MetaAnd:
        return f"({print_graded(alpha.left)} & {print_graded(alpha.right)})"
    if t is MetaUntil:
        return f"({print_graded(alpha.left)} U {print_graded(alpha.right)})"
    raise TypeError(f"not a graded formula: {alpha!r}")


@dataclass(frozen=True)
class WeightedConditional:
    """A defeasible implication ``(T(subject) -> consequent, weight)``."""

    subject: Formula
    consequent: Formula
    weight: Fraction

    def __post_init__(self):
        if has_typicality(self.subject) or has_typicality(self.consequent):
            raise NestedTypicalityError("weighted conditionals may not contain T(...)")
        object.__setattr__(self, "weight", Fraction(self.weight))

    @property
    def key(self) -> str:
        return formula_key(self.subject)

    def __str__(self):
        return f"weighted({print_formula(self.subject)}): {print_formula(self.consequent)} : {self.weight}"
