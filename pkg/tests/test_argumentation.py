import itertools
import random
from fractions import Fraction as Q

import pytest

from typtemporal.algebra import Scale
from typtemporal.argumentation import (
    ArgGraph,
    GraphTimeline,
    fixpoints,
    step,
    to_interpretation,
    to_temporal_interpretation,
    trajectory,
)
from typtemporal.core import check_coherence, evaluate
from typtemporal.errors import HorizonExceededError, SpaceTooLargeError
from typtemporal.parser import parse_formula as P
from typtemporal.parser import parse_graded
from typtemporal.temporal import msat, teval

h = Q(1, 2)


def graph(base, weights):
    return ArgGraph(tuple(base), {a: Q(v) for a, v in base.items()}, {e: Q(w) for e, w in weights.items()})


MUTUAL = graph({"a": 1, "b": 1}, {("a", "b"): -1, ("b", "a"): -1})
ATTACK = graph({"a": 1, "b": 1}, {("a", "b"): -1})


def test_step_examples():
    iso = graph({"a": 1}, {})
    for s in Scale(3).members():
        assert step(iso, {"a": s}, Scale(3)) == {"a": 1}
    assert step(ATTACK, {"a": Q(1), "b": Q(1)}, Scale(2))["b"] == 0
    zero = graph({"a": "1/3", "b": "2/3"}, {("a", "b"): 0, ("b", "a"): 0})
    assert step(zero, {"a": Q(1), "b": Q(0)}, Scale(2)) == {"a": h, "b": h}


def test_step_against_formula():
    # support and attack mixed, rounding to C_3
    G = graph({"a": "1/2", "b": "1/3", "c": 0}, {("a", "c"): "1/2", ("b", "c"): 1, ("c", "a"): "-1/4"})
    sigma = {"a": Q(2, 3), "b": Q(1, 3), "c": Q(1)}
    # c: 0 + 1/3 + 1/3 = 2/3; a: 1/2 - 1/4 = 1/4 -> nearest of {0,1/3} is 1/3; b: 1/3
    assert step(G, sigma, Scale(3)) == {"a": Q(1, 3), "b": Q(1, 3), "c": Q(2, 3)}


def test_flip_flop():
    tr = trajectory(MUTUAL, {"a": 1, "b": 1}, Scale(1))
    assert (tr.prefix, tr.loop) == (0, 2)
    assert tr.at(1) == {"a": 0, "b": 0} and tr.at(5) == {"a": 0, "b": 0}
    assert trajectory(MUTUAL, {"a": 0, "b": 0}, Scale(1)).loop == 2
    # (1, 0) is itself a fixed point of the mutual attack
    tr = trajectory(MUTUAL, {"a": 1, "b": 0}, Scale(1))
    assert (tr.prefix, tr.loop) == (0, 1)


def test_trajectory_reaches_fixed_point():
    tr = trajectory(ATTACK, {"a": 0, "b": 1}, Scale(2))
    assert tr.loop == 1 and tr.prefix == 2
    assert tr.at(tr.prefix) == {"a": 1, "b": 0}


def test_trajectory_horizon():
    with pytest.raises(HorizonExceededError):
        trajectory(MUTUAL, {"a": 1, "b": 1}, Scale(1), max_steps=1)


def test_timeline_switches_graph():
    tl = GraphTimeline((MUTUAL, MUTUAL, ATTACK))
    tr = trajectory(tl, {"a": 1, "b": 1}, Scale(1))
    assert [tr.at(t) for t in range(4)] == [{"a": 1, "b": 1}, {"a": 0, "b": 0}, {"a": 1, "b": 1}, {"a": 1, "b": 0}]
    assert tr.loop == 1 and tr.prefix == 3


def test_fixpoints_examples():
    assert fixpoints(graph({"a": 1}, {}), Scale(2)) == [{"a": 1}]
    assert fixpoints(ATTACK, Scale(2)) == [{"a": 1, "b": 0}]
    with pytest.raises(SpaceTooLargeError):
        fixpoints(graph({x: 1 for x in "abcdefghij"}, {}), Scale(3))


def test_fixpoints_brute_force():
    G = graph({"a": "1/2", "b": 1, "c": "1/2"}, {("a", "b"): -1, ("b", "c"): "1/2", ("c", "a"): "1/2"})
    scale = Scale(2)
    expected = []
    for va, vb, vc in itertools.product(scale.members(), repeat=3):
        new_a = scale.round(Q(1, 2) + Q(1, 2) * vc)
        new_b = scale.round(1 - va)
        new_c = scale.round(Q(1, 2) + Q(1, 2) * vb)
        if (new_a, new_b, new_c) == (va, vb, vc):
            expected.append({"a": va, "b": vb, "c": vc})
    assert fixpoints(G, scale) == expected


def test_to_interpretation_examples():
    M = to_interpretation([{"a": Q(3, 4), "b": Q(1, 4)}])
    assert evaluate(M, "w1", P("T(a)")) == Q(3, 4)
    assert evaluate(M, "w1", P("T(b)")) == Q(1, 4)
    M = to_interpretation([{"a": Q(1), "b": Q(0)}, {"a": h, "b": Q(1)}])
    from typtemporal.core import preference_relation

    assert preference_relation(M, P("a")) == {("w1", "w2")}
    assert preference_relation(M, P("b")) == {("w2", "w1")}
    assert check_coherence(M, [P("a"), P("b")]).coherent


def test_to_temporal_interpretation():
    tl = GraphTimeline((ATTACK,), ({"a": 0, "b": 1},))
    I = to_temporal_interpretation(tl, Scale(2))
    values = [teval(I, n, "s1", P("F T(a)")) for n in range(6)]
    assert values[-1] == values[-2] == 1
    both = to_temporal_interpretation(MUTUAL, Scale(1), seeds=[{"a": 1, "b": 0}, {"a": 1, "b": 1}])
    assert both.loop == 2 and both.worlds == ("s1", "s2")
    alpha = parse_graded("G((T(a) -> (b U a) | a) >= 0.7)")
    # s1 sits at a=1; s2 alternates, and its a=0 steps make T(a) vanish
    assert msat(both, 0, alpha)
    assert not msat(both, 0, parse_graded("G((top -> a) >= 1)"))
    assert msat(both, 0, parse_graded("G((T(a) -> a) >= 1)"))


def _random_graph(rng, nonneg=False):
    k = rng.randint(1, 4)
    args = tuple("abcd"[:k])
    n = rng.randint(1, 3)
    base = {x: Q(rng.randint(0, n), n) for x in args}
    weights = {}
    for e in itertools.product(args, repeat=2):
        if rng.random() < 0.5:
            w = Q(rng.randint(0 if nonneg else -2, 2), rng.randint(1, 2))
            weights[e] = w
    return ArgGraph(args, base, weights), Scale(n)


def test_step_monotone_for_nonnegative_weights():
    rng = random.Random(41)
    for _ in range(300):
        G, scale = _random_graph(rng, nonneg=True)
        lo = {x: rng.choice(scale.members()) for x in G.arguments}
        hi = {x: max(lo[x], rng.choice(scale.members())) for x in G.arguments}
        s_lo, s_hi = step(G, lo, scale), step(G, hi, scale)
        assert all(s_lo[x] <= s_hi[x] for x in G.arguments)


def test_trajectory_length_bound():
    rng = random.Random(42)
    for _ in range(300):
        G, scale = _random_graph(rng)
        seed = {x: rng.choice(scale.members()) for x in G.arguments}
        bound = len(scale) ** len(G.arguments) + 1
        tr = trajectory(G, seed, scale, max_steps=bound)
        assert tr.prefix + tr.loop <= len(scale) ** len(G.arguments)
        # the lasso really repeats
        for t in range(tr.prefix, tr.prefix + tr.loop):
            assert step(G, tr.at(t), scale) == tr.at(t + 1)
