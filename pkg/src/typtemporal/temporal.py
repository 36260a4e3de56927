"""Temporal interpretations over lasso-shaped time.

Time is ℕ, presented as a prefix of ``prefix`` positions followed by a loop of
``loop`` positions that repeats forever: time ``n >= prefix + loop`` denotes
position ``prefix + (n - prefix) % loop``.  Because valuations and preferences
are periodic, every formula's degree is periodic too, so each subformula is
evaluated once per (position, world) and stored in a table.

The unbounded operators F, G and U are folds over infinitely many time points.
Under min/max those folds are attained on a finite window: for F and G the
positions reachable from ``n`` are all visited within ``[n, max(n,p)+l)``; for U
the running minimum of the left argument stabilizes after one extra loop, so
``[n, max(n,p)+2l]`` suffices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .algebra import GOEDEL, ONE, ZERO, Algebra, Degree, degree
from .core import CoherenceReport, PreferentialInterpretation, _coherence_entry, compare
from .errors import MissingPreferenceError, MissingPropError, NonIdempotentAlgebraError, UnknownWorldError
from .formulas import (
    Always,
    And,
    Bot,
    BoundedAlways,
    BoundedEventually,
    BoundedUntil,
    Eventually,
    Formula,
    GradedFormula,
    GradedImplication,
    Implies,
    MetaAlways,
    MetaAnd,
    MetaEventually,
    MetaNext,
    MetaNot,
    MetaUntil,
    Next,
    Not,
    Or,
    Prop,
    Top,
    Typ,
    Until,
    WeightedConditional,
    formula_key,
)
from .preferences import PrefMode, minimal_worlds, order_by_score, validate_strict_order


@dataclass(frozen=True)
class TemporalInterpretation:
    worlds: tuple[str, ...]
    prefix: int
    loop: int
    valuation: Mapping[tuple[int, str, str], Fraction]
    prefs: Mapping[tuple[int, str], frozenset] = field(default_factory=dict)
    pref_mode: PrefMode = PrefMode.EXPLICIT
    conditionals: tuple[WeightedConditional, ...] = ()

    def __post_init__(self):
        worlds = tuple(self.worlds)
        if not worlds or len(set(worlds)) != len(worlds):
            raise ValueError("worlds must be non-empty and distinct")
        if self.prefix < 0 or self.loop < 1:
            raise ValueError(f"bad lasso shape prefix={self.prefix} loop={self.loop}")
        object.__setattr__(self, "worlds", worlds)
        n_pos = self.prefix + self.loop
        val = {}
        for (t, w, p), d in self.valuation.items():
            if not 0 <= t < n_pos:
                raise ValueError(f"valuation position {t} outside the lasso [0, {n_pos})")
            if w not in worlds:
                raise UnknownWorldError(f"valuation mentions unknown world {w!r}")
            val[(t, w, p)] = degree(d)
        object.__setattr__(self, "valuation", val)
        prefs = {}
        for (t, key), rel in self.prefs.items():
            if not 0 <= t < n_pos:
                raise ValueError(f"preference position {t} outside the lasso [0, {n_pos})")
            prefs[(t, key)] = validate_strict_order(rel, worlds, f"{key!r} at t={t}")
        object.__setattr__(self, "prefs", prefs)
        object.__setattr__(self, "conditionals", tuple(self.conditionals))

    @property
    def positions(self) -> int:
        return self.prefix + self.loop

    def position(self, n: int) -> int:
        if n < 0:
            raise ValueError("time points are non-negative")
        if n < self.positions:
            return n
        return self.prefix + (n - self.prefix) % self.loop

    def successor(self, pos: int) -> int:
        return self.position(pos + 1)

    def value(self, n: int, world: str, prop: str) -> Degree:
        try:
            return self.valuation[(self.position(n), world, prop)]
        except KeyError:
            if world not in self.worlds:
                raise UnknownWorldError(f"unknown world {world!r}") from None
            raise MissingPropError(f"no value for {prop!r} at t={n}, world {world!r}") from None

    def props(self) -> set[str]:
        return {p for (_, _, p) in self.valuation}

    def with_conditionals(self, conditionals: Sequence[WeightedConditional]) -> "TemporalInterpretation":
        return TemporalInterpretation(
            self.worlds, self.prefix, self.loop, self.valuation, self.prefs, self.pref_mode, tuple(conditionals)
        )

    def with_prefs(self, prefs: Mapping[tuple[int, str], frozenset]) -> "TemporalInterpretation":
        return TemporalInterpretation(
            self.worlds, self.prefix, self.loop, self.valuation, prefs, PrefMode.EXPLICIT, self.conditionals
        )


def static_interpretation(model: PreferentialInterpretation) -> TemporalInterpretation:
    """View a non-temporal model as a one-position lasso (the same state forever)."""
    return TemporalInterpretation(
        model.worlds,
        0,
        1,
        {(0, w, p): d for (w, p), d in model.valuation.items()},
        {(0, k): rel for k, rel in model.prefs.items()},
        model.pref_mode,
        model.conditionals,
    )


class TemporalEvaluator:
    """Memoizing evaluator bound to one interpretation and one algebra.

    Tables are private to the instance; build a new evaluator per session.
    """

    def __init__(self, interp: TemporalInterpretation, alg: Algebra = GOEDEL):
        self.I = interp
        self.alg = alg
        self.widx = {w: i for i, w in enumerate(interp.worlds)}
        self._tables: dict[Formula, list[list[Degree]]] = {}
        self._typical: dict[tuple[str, int], set[str]] = {}
        self._sat: dict[GradedFormula, list[bool]] = {}

    # -- object formulas

    def value(self, f: Formula, n: int, world: str) -> Degree:
        if world not in self.widx:
            raise UnknownWorldError(f"unknown world {world!r}")
        return self.table(f)[self.I.position(n)][self.widx[world]]

    def table(self, f: Formula) -> list[list[Degree]]:
        tab = self._tables.get(f)
        if tab is None:
            tab = self._compute(f)
            self._tables[f] = tab
        return tab

    def _series(self, tab, start: int, stop: int, wi: int) -> list[Degree]:
        """Values at times ``start .. stop-1`` for world index ``wi``."""
        pos = self.I.position
        return [tab[pos(m)][wi] for m in range(start, stop)]

    def _require_idempotent(self, f):
        if not self.alg.idempotent:
            raise NonIdempotentAlgebraError(
                f"unbounded temporal operator in {f} needs a min/max algebra; use a bounded operator"
            )

    def _compute(self, f: Formula) -> list[list[Degree]]:
        I, alg = self.I, self.alg
        P, nw = I.positions, len(I.worlds)
        t = type(f)
        if t is Prop:
            return [[I.value(i, w, f.name) for w in I.worlds] for i in range(P)]
        if t is Top:
            return [[ONE] * nw for _ in range(P)]
        if t is Bot:
            return [[ZERO] * nw for _ in range(P)]
        if t is Not:
            a = self.table(f.arg)
            return [[alg.negation(x) for x in row] for row in a]
        if t in (And, Or, Implies):
            op = {And: alg.tnorm, Or: alg.snorm, Implies: alg.implication}[t]
            a, b = self.table(f.left), self.table(f.right)
            return [[op(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]
        if t is Typ:
            a = self.table(f.arg)
            out = []
            for i in range(P):
                typical = self.typical_worlds(f.arg, i)
                out.append([a[i][j] if w in typical else ZERO for j, w in enumerate(I.worlds)])
            return out
        if t is Next:
            a = self.table(f.arg)
            return [list(a[I.successor(i)]) for i in range(P)]
        if t in (Eventually, Always):
            self._require_idempotent(f)
            a = self.table(f.arg)
            fold = max if t is Eventually else min
            return [
                [fold(self._series(a, i, max(i, I.prefix) + I.loop, j)) for j in range(nw)] for i in range(P)
            ]
        if t in (BoundedEventually, BoundedAlways):
            a = self.table(f.arg)
            op = alg.snorm if t is BoundedEventually else alg.tnorm
            return [[_fold(op, self._series(a, i, i + f.bound + 1, j)) for j in range(nw)] for i in range(P)]
        if t is Until:
            self._require_idempotent(f)
            return self._until(f.left, f.right, lambda i: max(i, I.prefix) + 2 * I.loop)
        if t is BoundedUntil:
            return self._until(f.left, f.right, lambda i: i + f.bound)
        raise TypeError(f"not a formula: {f!r}")

    def _until(self, left, right, last_time) -> list[list[Degree]]:
        I, alg = self.I, self.alg
        a, b = self.table(left), self.table(right)
        out = []
        for i in range(I.positions):
            stop = last_time(i) + 1
            row = []
            for j in range(len(I.worlds)):
                avals = self._series(a, i, stop, j)
                bvals = self._series(b, i, stop, j)
                best = None
                prefix = ONE  # tnorm over the empty range
                for k in range(stop - i):
                    term = alg.tnorm(bvals[k], prefix)
                    best = term if best is None else alg.snorm(best, term)
                    prefix = alg.tnorm(prefix, avals[k])
                row.append(best)
            out.append(row)
        return out

    def typical_worlds(self, subject: Formula, pos: int) -> set[str]:
        key = formula_key(subject)
        if (key, pos) not in self._typical:
            self._typical[(key, pos)] = minimal_worlds(self.relation(subject, pos), self.I.worlds)
        return self._typical[(key, pos)]

    def relation(self, subject: Formula, pos: int) -> frozenset:
        """The order ``<^pos_subject`` in effect at lasso position ``pos``."""
        I = self.I
        key = formula_key(subject)
        if I.pref_mode is PrefMode.EXPLICIT:
            try:
                return I.prefs[(pos, key)]
            except KeyError:
                raise MissingPreferenceError(f"no preference relation for {key!r} at t={pos}") from None
        if I.pref_mode is PrefMode.COHERENT:
            row = self.table(subject)[pos]
            return order_by_score(dict(zip(I.worlds, row)))
        return order_by_score(self.weights(key, pos))

    def weights(self, key: str, pos: int) -> dict[str, Fraction]:
        conds = [c for c in self.I.conditionals if c.key == key]
        if not conds:
            raise MissingPreferenceError(f"{key!r} is not distinguished by any weighted conditional")
        return world_weights(self, conds, pos)

    # -- graded formulas

    def degree_at(self, f: Formula, g: Formula, n: int) -> Degree:
        pos = self.I.position(n)
        a, b = self.table(f)[pos], self.table(g)[pos]
        return min(self.alg.implication(x, y) for x, y in zip(a, b))

    def sat(self, alpha: GradedFormula, n: int) -> bool:
        return self.sat_table(alpha)[self.I.position(n)]

    def sat_table(self, alpha: GradedFormula) -> list[bool]:
        tab = self._sat.get(alpha)
        if tab is None:
            tab = self._compute_sat(alpha)
            self._sat[alpha] = tab
        return tab

    def _compute_sat(self, alpha: GradedFormula) -> list[bool]:
        I = self.I
        P = I.positions
        t = type(alpha)
        if t is GradedImplication:
            return [compare(self.degree_at(alpha.lhs, alpha.rhs, i), alpha.cmp, alpha.threshold) for i in range(P)]
        if t is MetaAnd:
            a, b = self.sat_table(alpha.left), self.sat_table(alpha.right)
            return [x and y for x, y in zip(a, b)]
        if t is MetaNot:
            return [not x for x in self.sat_table(alpha.arg)]
        if t is MetaNext:
            a = self.sat_table(alpha.arg)
            return [a[I.successor(i)] for i in range(P)]
        if t in (MetaEventually, MetaAlways):
            a = self.sat_table(alpha.arg)
            q = any if t is MetaEventually else all
            return [q(a[I.position(m)] for m in range(i, max(i, I.prefix) + I.loop)) for i in range(P)]
        if t is MetaUntil:
            a, b = self.sat_table(alpha.left), self.sat_table(alpha.right)
            out = []
            for i in range(P):
                result = False
                for m in range(i, max(i, I.prefix) + I.loop):
                    if b[I.position(m)]:
                        result = True
                        break
                    if not a[I.position(m)]:
                        break
                out.append(result)
            return out
        raise TypeError(f"not a graded formula: {alpha!r}")


def _fold(op, values):
    acc = values[0]
    for v in values[1:]:
        acc = op(acc, v)
    return acc


def world_weights(ev: TemporalEvaluator, conds: Sequence[WeightedConditional], pos: int) -> dict[str, Fraction]:
    """Sum of ``weight * v(pos, x, consequent)`` over ``conds`` for every world ``x``."""
    out = {}
    for j, w in enumerate(ev.I.worlds):
        out[w] = sum((c.weight * ev.table(c.consequent)[pos][j] for c in conds), Fraction(0))
    return out


# -------------------------------------------------------------- entry points


def teval(I: TemporalInterpretation, n: int, w: str, f: Formula, alg: Algebra = GOEDEL) -> Degree:
    """Degree of ``f`` at time ``n`` in world ``w``."""
    return TemporalEvaluator(I, alg).value(f, n, w)


def teval_bounded(
    I: TemporalInterpretation, n: int, w: str, op: str, bound: int, args: Sequence[Formula], alg: Algebra = GOEDEL
) -> Degree:
    """Bounded fold ``F[t]``, ``G[t]`` or ``U[t]`` (``op`` is "F", "G" or "U")."""
    if op == "F":
        f = BoundedEventually(bound, *args)
    elif op == "G":
        f = BoundedAlways(bound, *args)
    elif op == "U":
        f = BoundedUntil(bound, *args)
    else:
        raise ValueError(f"unknown bounded operator {op!r}")
    return teval(I, n, w, f, alg)


def implication_degree_at(I: TemporalInterpretation, n: int, f: Formula, g: Formula, alg: Algebra = GOEDEL) -> Degree:
    return TemporalEvaluator(I, alg).degree_at(f, g, n)


def msat(I: TemporalInterpretation, n: int, alpha: GradedFormula, alg: Algebra = GOEDEL) -> bool:
    """Whether the graded formula holds at time ``n``."""
    return TemporalEvaluator(I, alg).sat(alpha, n)


def satisfies_temporal(I: TemporalInterpretation, alpha: GradedFormula, alg: Algebra = GOEDEL) -> bool:
    return msat(I, 0, alpha, alg)


def is_model(I: TemporalInterpretation, kb: Sequence[GradedFormula], alg: Algebra = GOEDEL) -> bool:
    ev = TemporalEvaluator(I, alg)
    return all(ev.sat(alpha, 0) for alpha in kb)


def slice_at(I: TemporalInterpretation, n: int) -> PreferentialInterpretation:
    """The non-temporal interpretation holding at time ``n``."""
    pos = I.position(n)
    return PreferentialInterpretation(
        I.worlds,
        {(w, p): d for (t, w, p), d in I.valuation.items() if t == pos},
        {k: rel for (t, k), rel in I.prefs.items() if t == pos},
        I.pref_mode,
        I.conditionals,
    )


def effective_preferences(
    I: TemporalInterpretation, subjects: Sequence[Formula], alg: Algebra = GOEDEL, ev: Optional[TemporalEvaluator] = None
) -> dict[tuple[int, str], frozenset]:
    """Materialize ``<^n_A`` at every lasso position for each subject ``A``."""
    ev = ev or TemporalEvaluator(I, alg)
    return {(i, formula_key(s)): ev.relation(s, i) for i in range(I.positions) for s in subjects}


def check_coherence_at(
    I: TemporalInterpretation,
    n: int,
    subjects: Optional[Sequence[Formula]] = None,
    alg: Algebra = GOEDEL,
    ev: Optional[TemporalEvaluator] = None,
) -> CoherenceReport:
    """Coherence/faithfulness classification of ``<^n_A`` against ``v(n, ., A)``."""
    from .parser import parse_formula

    pos = I.position(n)
    if subjects is None:
        keys = sorted({k for (t, k) in I.prefs if t == pos} | {c.key for c in I.conditionals})
        subjects = [parse_formula(k) for k in keys]
    ev = ev or TemporalEvaluator(I, alg)
    entries = []
    for s in subjects:
        scores = {w: ev.value(s, pos, w) for w in I.worlds}
        entries.append(_coherence_entry(formula_key(s), ev.relation(s, pos), scores, I.worlds))
    return CoherenceReport(entries)
