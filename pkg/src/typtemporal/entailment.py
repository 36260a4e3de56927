"""Entailment by exhaustive model enumeration over a declared finite space.

A verdict of "entailed" means: no model inside the :class:`SearchSpace`
satisfies the knowledge base while violating the query.  Nothing is claimed
about models outside the space.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .algebra import GOEDEL, ONE, Algebra, Scale
from .core import Evaluator, PreferentialInterpretation, implication_degree
from .errors import SpaceTooLargeError
from .formulas import (
    TOP,
    And,
    Cmp,
    Formula,
    GradedFormula,
    GradedImplication,
    Not,
    Or,
    Prop,
    Typ,
    formula_key,
    graded_object_formulas,
    print_graded,
    props_of,
    typicality_subjects,
)
from .preferences import PrefMode, all_strict_orders
from .temporal import TemporalEvaluator, TemporalInterpretation

DEFAULT_MAX_MODELS = 500_000


class PrefEnum(enum.Enum):
    COHERENT_ONLY = "coherent"
    ALL_STRICT_ORDERS = "all"


@dataclass(frozen=True)
class SearchSpace:
    num_worlds: int
    scale: Scale
    props: Optional[tuple[str, ...]] = None
    prefix: int = 0
    loop: int = 1
    pref_enum: PrefEnum = PrefEnum.COHERENT_ONLY
    algebra: Algebra = GOEDEL
    max_models: int = DEFAULT_MAX_MODELS

    def __post_init__(self):
        if self.num_worlds < 1:
            raise ValueError("num_worlds must be positive")
        if self.prefix < 0 or self.loop < 1:
            raise ValueError("bad lasso shape")
        if self.props is not None:
            object.__setattr__(self, "props", tuple(sorted(set(self.props))))

    @property
    def worlds(self) -> tuple[str, ...]:
        return tuple(f"w{i + 1}" for i in range(self.num_worlds))

    def describe(self) -> str:
        props = ",".join(self.props or ())
        return (
            f"worlds={self.num_worlds} scale=C_{self.scale.n} props={{{props}}} "
            f"prefix={self.prefix} loop={self.loop} prefs={self.pref_enum.value} algebra={self.algebra.name}"
        )

    def with_props(self, props: Iterable[str]) -> "SearchSpace":
        return SearchSpace(
            self.num_worlds, self.scale, tuple(props), self.prefix, self.loop, self.pref_enum, self.algebra, self.max_models
        )


def _collect(formulas: Iterable[GradedFormula]) -> tuple[set[str], list[Formula]]:
    props, subjects = set(), {}
    for alpha in formulas:
        for f in graded_object_formulas(alpha):
            props |= props_of(f)
            for s in typicality_subjects(f):
                subjects.setdefault(formula_key(s), s)
    return props, list(subjects.values())


# number of strict partial orders on k labelled points (labelled posets)
_ORDER_COUNTS = (1, 1, 3, 19, 219, 4231, 130023, 6129859, 431723379, 44511042511)


def cardinality(space: SearchSpace, num_subjects: int = 0) -> Optional[int]:
    """Number of models in the space, or None when the order count is unknown."""
    positions = space.prefix + space.loop
    slots = space.num_worlds * len(space.props or ()) * positions
    count = len(space.scale) ** slots
    if space.pref_enum is PrefEnum.ALL_STRICT_ORDERS:
        if space.num_worlds >= len(_ORDER_COUNTS):
            return None
        orders = _ORDER_COUNTS[space.num_worlds]
        count *= orders ** (num_subjects * positions)
    return count


def _check_guards(space: SearchSpace, subjects: Sequence[Formula]) -> int:
    if space.pref_enum is PrefEnum.ALL_STRICT_ORDERS:
        if space.num_worlds > 3 or len(subjects) > 2:
            raise SpaceTooLargeError(
                "enumerating all strict orders needs at most 3 worlds and 2 typicality subjects "
                f"(got {space.num_worlds} worlds, {len(subjects)} subjects)",
                cardinality(space, len(subjects)),
            )
    size = cardinality(space, len(subjects))
    if size > space.max_models:
        raise SpaceTooLargeError(f"search space has {size} models, above the guard of {space.max_models}", size)
    return size


def enumerate_models(space: SearchSpace, subjects: Sequence[Formula] = ()) -> Iterator[TemporalInterpretation]:
    """Every interpretation in the space, in a fixed canonical order.

    Valuations vary slowest-last over (position, world, prop) slots; for each
    valuation all preference assignments follow.
    """
    worlds = space.worlds
    positions = space.prefix + space.loop
    slots = [(t, w, p) for t in range(positions) for w in worlds for p in space.props or ()]
    members = space.scale.members()
    if space.pref_enum is PrefEnum.ALL_STRICT_ORDERS:
        orders = all_strict_orders(worlds)
        pref_slots = [(t, formula_key(s)) for t in range(positions) for s in subjects]
    for values in itertools.product(members, repeat=len(slots)):
        valuation = dict(zip(slots, values))
        if space.pref_enum is PrefEnum.COHERENT_ONLY:
            yield TemporalInterpretation(worlds, space.prefix, space.loop, valuation, {}, PrefMode.COHERENT)
            continue
        for choice in itertools.product(orders, repeat=len(pref_slots)):
            yield TemporalInterpretation(
                worlds, space.prefix, space.loop, valuation, dict(zip(pref_slots, choice)), PrefMode.EXPLICIT
            )


@dataclass
class Verdict:
    entailed: bool
    space: SearchSpace
    models_checked: int
    countermodel: Optional[TemporalInterpretation] = None

    def headline(self) -> str:
        if self.entailed:
            return f"ENTAILED (space: {self.space.describe()})"
        return "COUNTERMODEL"


def entails(
    kb: Sequence[GradedFormula], query: GradedFormula, space: SearchSpace
) -> Verdict:
    """Decide ``kb |= query`` relative to ``space``; the first countermodel is returned."""
    kb = list(kb)
    props, subjects = _collect(kb + [query])
    if space.props is None:
        space = space.with_props(props)
    else:
        space = space.with_props(set(space.props) | props)
    _check_guards(space, subjects)
    checked = 0
    for model in enumerate_models(space, subjects):
        checked += 1
        ev = TemporalEvaluator(model, space.algebra)
        if all(ev.sat(alpha, 0) for alpha in kb) and not ev.sat(query, 0):
            return Verdict(False, space, checked, model)
    return Verdict(True, space, checked)


def one_entails(kb: Sequence[GradedFormula], gi: GradedImplication, space: SearchSpace) -> Verdict:
    """1-entailment: ``gi`` must be ``A -> B >= 1``; models are single time slices."""
    if not isinstance(gi, GradedImplication) or gi.cmp is not Cmp.GE or gi.threshold != ONE:
        raise ValueError("1-entailment queries have the form (A -> B) >= 1")
    flat = SearchSpace(
        space.num_worlds, space.scale, space.props, 0, 1, space.pref_enum, space.algebra, space.max_models
    )
    return entails(kb, gi, flat)


# ----------------------------------------------------------------- KLM suite

POSTULATES = ("Reflexivity", "LLE", "RW", "And", "Or", "CM")

# a conditional T(subject) -> consequent >= 1
Conditional = tuple[Formula, Formula]


def default_pool(props: Sequence[str]) -> list[Formula]:
    """Atoms, their negations, both orders of each pairwise conjunction, disjunctions, and top."""
    atoms = [Prop(p) for p in props]
    pool = list(atoms) + [Not(a) for a in atoms]
    for a, b in itertools.combinations(atoms, 2):
        pool += [And(a, b), And(b, a), Or(a, b)]
    pool.append(TOP)
    return pool


@dataclass(frozen=True)
class Instance:
    postulate: str
    premises: tuple[Conditional, ...]
    conclusion: Conditional
    side: str = ""

    @property
    def subjects(self) -> list[Formula]:
        found = {}
        for subj, _ in self.premises + (self.conclusion,):
            found.setdefault(formula_key(subj), subj)
        return list(found.values())

    def __str__(self):
        def show(c):
            return print_graded(GradedImplication(Typ(c[0]), c[1], Cmp.GE, ONE))

        prem = ", ".join(show(c) for c in self.premises)
        side = f"{self.side}; " if self.side else ""
        return f"{side}{prem} => {show(self.conclusion)}" if prem or side else show(self.conclusion)


@dataclass
class PostulateResult:
    name: str
    instances: int = 0
    checks: int = 0
    premises_held: int = 0
    skipped: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        skipped = f" skipped={self.skipped}" if self.skipped else ""
        return (
            f"{status} {self.name} instances={self.instances} checks={self.checks} "
            f"premises_held={self.premises_held} counterexamples={len(self.counterexamples)}{skipped}"
        )


@dataclass
class KLMReport:
    space: SearchSpace
    pool: list[Formula]
    results: dict[str, PostulateResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def lines(self) -> list[str]:
        from .files import dump_preferential

        out = [f"KLM space: {self.space.describe()} pool={len(self.pool)}"]
        for name in POSTULATES:
            r = self.results[name]
            out.append(r.line())
            for instance, model in r.counterexamples[:1]:
                out.append(f"  counterexample: {instance}")
                out += ["    " + line for line in dump_preferential(model).splitlines()]
        return out


def klm_instances(pool: Sequence[Formula], validity) -> Iterator[Instance]:
    """All instantiations of the six postulates over ``pool``.

    LLE and RW instances are produced only when their validity side condition
    holds (``validity(f, g)`` decides ``|= f -> g``).
    """
    for a in pool:
        yield Instance("Reflexivity", (), (a, a))
    for a, b, c in itertools.product(pool, repeat=3):
        if validity(a, b) and validity(b, a):
            yield Instance("LLE", ((a, c),), (b, c), f"|= {a} <-> {b}")
        if validity(b, c):
            yield Instance("RW", ((a, b),), (a, c), f"|= {b} -> {c}")
        yield Instance("And", ((a, b), (a, c)), (a, And(b, c)))
        yield Instance("Or", ((a, c), (b, c)), (Or(a, b), c))
        yield Instance("CM", ((a, c), (a, b)), (And(a, b), c))


def _valuations(space: SearchSpace) -> Iterator[dict]:
    slots = [(w, p) for w in space.worlds for p in space.props]
    for values in itertools.product(space.scale.members(), repeat=len(slots)):
        yield dict(zip(slots, values))


def klm_suite(space: SearchSpace, pool: Optional[Sequence[Formula]] = None, max_counterexamples: int = 5) -> KLMReport:
    """Check the per-model closure form of each KLM postulate over every model in ``space``.

    For each model and each instance drawn from ``pool``: if the premises hold
    in the model, the conclusion must hold in the same model.  Validity side
    conditions are decided over all single-world valuations of the scale.

    With ``PrefEnum.ALL_STRICT_ORDERS`` each instance is checked against every
    assignment of strict orders to its own typicality subjects; instances with
    more than two subjects (Or) are skipped by the combinatorial guard.
    """
    if space.props is None:
        raise ValueError("the KLM suite needs an explicit proposition set")
    pool = list(pool) if pool is not None else default_pool(space.props)
    alg = space.algebra
    n_valuations = len(space.scale) ** (space.num_worlds * len(space.props))
    if n_valuations > space.max_models:
        raise SpaceTooLargeError(f"{n_valuations} valuations exceed the guard of {space.max_models}", n_valuations)
    all_orders = space.pref_enum is PrefEnum.ALL_STRICT_ORDERS
    if all_orders and space.num_worlds > 3:
        raise SpaceTooLargeError("enumerating all strict orders needs at most 3 worlds", None)

    validity_cache = {}

    def validity(f, g):
        if (f, g) not in validity_cache:
            validity_cache[(f, g)] = _valid(f, g, space)
        return validity_cache[(f, g)]

    instances = list(klm_instances(pool, validity))
    results = {name: PostulateResult(name) for name in POSTULATES}
    for inst in instances:
        results[inst.postulate].instances += 1

    def check(inst, ev, model):
        r = results[inst.postulate]
        r.checks += 1
        if all(ev.degree(Typ(s), c) == ONE for s, c in inst.premises):
            r.premises_held += 1
            s, c = inst.conclusion
            if ev.degree(Typ(s), c) != ONE:
                # only the first few models are kept; the count stays exact
                keep = model if len(r.counterexamples) < max_counterexamples else None
                r.counterexamples.append((inst, keep))

    if not all_orders:
        for valuation in _valuations(space):
            model = PreferentialInterpretation(space.worlds, valuation, {}, PrefMode.COHERENT)
            ev = Evaluator(model, alg)
            for inst in instances:
                check(inst, ev, model)
    else:
        orders = all_strict_orders(space.worlds)
        valuations = list(_valuations(space))
        for inst in instances:
            keys = [formula_key(s) for s in inst.subjects]
            if len(keys) > 2:
                results[inst.postulate].skipped += 1
                continue
            for valuation in valuations:
                for choice in itertools.product(orders, repeat=len(keys)):
                    model = PreferentialInterpretation(space.worlds, valuation, dict(zip(keys, choice)))
                    check(inst, Evaluator(model, alg), model)
    return KLMReport(space, pool, results)


def _valid(f: Formula, g: Formula, space: SearchSpace) -> bool:
    """``|= f -> g``: degree 1 at every single-world valuation over the scale."""
    props = sorted(props_of(f) | props_of(g))
    for values in itertools.product(space.scale.members(), repeat=len(props)):
        m = PreferentialInterpretation(("w",), {("w", p): v for p, v in zip(props, values)}, {}, PrefMode.COHERENT)
        if implication_degree(m, f, g, space.algebra) != ONE:
            return False
    return True
