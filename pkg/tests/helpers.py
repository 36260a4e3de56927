"""Random generators shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from typtemporal.algebra import Scale
from typtemporal.formulas import (
    BOT,
    TOP,
    And,
    Always,
    BoundedAlways,
    BoundedEventually,
    BoundedUntil,
    Cmp,
    Eventually,
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
    Typ,
    Until,
    formula_key,
    props_of,
)
from typtemporal.preferences import PrefMode, all_strict_orders
from typtemporal.temporal import TemporalInterpretation

PROPS = ("a", "b")
# typicality subjects drawn from a fixed pool so explicit models can cover them
SUBJECTS = (Prop("a"), Prop("b"), And(Prop("a"), Prop("b")), Eventually(Prop("a")))


def rand_formula(rng, depth, props=PROPS, temporal=True, typ=True, bounded=True, in_typ=False):
    if depth <= 0 or rng.random() < 0.2:
        r = rng.random()
        if r < 0.06:
            return TOP
        if r < 0.12:
            return BOT
        return Prop(rng.choice(props))
    kinds = ["not", "and", "or", "imp"]
    if typ and not in_typ:
        kinds.append("typ")
    if temporal:
        kinds += ["X", "F", "G", "U"]
        if bounded:
            kinds += ["F[]", "G[]", "U[]"]
    k = rng.choice(kinds)

    def sub():
        return rand_formula(rng, depth - 1, props, temporal, typ, bounded, in_typ)

    if k == "not":
        return Not(sub())
    if k == "and":
        return And(sub(), sub())
    if k == "or":
        return Or(sub(), sub())
    if k == "imp":
        return Implies(sub(), sub())
    if k == "typ":
        pool = [s for s in (SUBJECTS if temporal else SUBJECTS[:3]) if props_of(s) <= set(props)]
        return Typ(rng.choice(pool or [Prop(p) for p in props]))
    if k == "X":
        return Next(sub())
    if k == "F":
        return Eventually(sub())
    if k == "G":
        return Always(sub())
    if k == "U":
        return Until(sub(), sub())
    t = rng.randint(0, 4)
    if k == "F[]":
        return BoundedEventually(t, sub())
    if k == "G[]":
        return BoundedAlways(t, sub())
    return BoundedUntil(t, sub(), sub())


def rand_graded(rng, depth, props=PROPS, scale=Scale(4)):
    if depth <= 0 or rng.random() < 0.3:
        lhs = rand_formula(rng, 2, props, bounded=False)
        rhs = rand_formula(rng, 2, props, bounded=False)
        cmp = rng.choice([Cmp.GE, Cmp.GE, Cmp.LE])
        return GradedImplication(lhs, rhs, cmp, rng.choice(scale.members()))
    k = rng.choice(["and", "not", "X", "F", "G", "U"])
    if k == "and":
        return MetaAnd(rand_graded(rng, depth - 1, props, scale), rand_graded(rng, depth - 1, props, scale))
    if k == "not":
        return MetaNot(rand_graded(rng, depth - 1, props, scale))
    if k == "X":
        return MetaNext(rand_graded(rng, depth - 1, props, scale))
    if k == "F":
        return MetaEventually(rand_graded(rng, depth - 1, props, scale))
    if k == "G":
        return MetaAlways(rand_graded(rng, depth - 1, props, scale))
    return MetaUntil(rand_graded(rng, depth - 1, props, scale), rand_graded(rng, depth - 1, props, scale))


def rand_lasso(rng, max_worlds=3, max_prefix=3, max_loop=3, n=4, props=PROPS, mode=None):
    k = rng.randint(1, max_worlds)
    worlds = tuple(f"w{i + 1}" for i in range(k))
    p = rng.randint(0, max_prefix)
    loop = rng.randint(1, max_loop)
    members = Scale(n).members()
    val = {(t, w, q): rng.choice(members) for t in range(p + loop) for w in worlds for q in props}
    mode = mode or rng.choice([PrefMode.COHERENT, PrefMode.EXPLICIT])
    prefs = {}
    if mode is PrefMode.EXPLICIT:
        orders = all_strict_orders(worlds)
        prefs = {(t, formula_key(s)): rng.choice(orders) for t in range(p + loop) for s in SUBJECTS}
    return TemporalInterpretation(worlds, p, loop, val, prefs, mode)


def rng_for(seed):
    return random.Random(seed)


def frac(text):
    return Fraction(text)
