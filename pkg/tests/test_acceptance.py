"""Acceptance suite: one test per criterion, summarised by conftest.py."""

import itertools
import time
from fractions import Fraction as Q
from pathlib import Path

from typtemporal.algebra import GOEDEL, ZADEH, Scale
from typtemporal.argumentation import ArgGraph, fixpoints, to_interpretation, trajectory
from typtemporal.cli import main
from typtemporal.core import PreferentialInterpretation, check_coherence, preference_relation, satisfies
from typtemporal.entailment import SearchSpace, klm_suite
from typtemporal.files import load_interpretation, parse_kb
from typtemporal.formulas import (
    BoundedAlways,
    BoundedEventually,
    BoundedUntil,
    Always,
    Cmp,
    Eventually,
    GradedImplication,
    Prop,
    Typ,
    Until,
    formula_key,
    print_graded,
)
from typtemporal.parser import parse_formula as P
from typtemporal.preferences import all_strict_orders, faithful_lift, order_by_score, transitive_closure
from typtemporal.temporal import TemporalEvaluator, is_model, msat
from typtemporal.weighted import derive_preferences, world_weight

from helpers import rand_formula, rand_graded, rand_lasso, rng_for
from oracles import Unrolled, classical_preferential

DATA = Path(__file__).resolve().parents[1] / "demos" / "data"
ONE, ZERO = Q(1), Q(0)


def test_criterion_01_algebra_laws(record_property):
    """Algebra laws over C_4: definitions, lattice laws and Goedel residuation, under 1 s."""
    start = time.perf_counter()
    c4 = Scale(4).members()
    triples = list(itertools.product(c4, repeat=3))
    assert len(triples) == 125
    defs = {
        "goedel": (lambda a, b: ONE if a <= b else b, lambda a: ONE if a == 0 else ZERO),
        "zadeh": (lambda a, b: max(1 - a, b), lambda a: 1 - a),
    }
    for alg in (GOEDEL, ZADEH):
        imp, neg = defs[alg.name]
        t, s = alg.tnorm, alg.snorm
        for a, b, c in triples:
            assert t(a, b) == min(a, b) and s(a, b) == max(a, b)
            assert alg.implication(a, b) == imp(a, b) and alg.negation(a) == neg(a)
            assert t(a, a) == a and s(a, a) == a
            assert t(a, b) == t(b, a) and s(a, b) == s(b, a)
            assert t(a, t(b, c)) == t(t(a, b), c) and s(a, s(b, c)) == s(s(a, b), c)
            assert t(a, s(a, b)) == a and s(a, t(a, b)) == a
            assert t(a, ONE) == a and s(a, ZERO) == a
    for a, b, c in triples:
        assert (GOEDEL.tnorm(a, b) <= c) == (a <= GOEDEL.implication(b, c))
    elapsed = time.perf_counter() - start
    record_property("seconds", f"{elapsed:.3f}")
    assert elapsed < 1.0


def test_criterion_02_student_example(record_property):
    """Student example: weights 80 and 40, and w <_student w' at time 0."""
    I = load_interpretation((DATA / "student.model").read_text())
    K = parse_kb((DATA / "student.kb").read_text())
    w80 = world_weight(I, K, "student", 0, "w")
    w40 = world_weight(I, K, "student", 0, "wp")
    record_property("weights", f"{w80}/{w40}")
    assert (w80, w40) == (80, 40)
    rel = derive_preferences(I, K)[(0, "student")]
    assert rel == frozenset({("w", "wp")})


def _random_models(count, seed):
    rng = rng_for(seed)
    for i in range(count):
        I = rand_lasso(rng, max_worlds=3, max_prefix=3, max_loop=3, n=4)
        alg = GOEDEL if i % 2 == 0 else ZADEH
        yield rng, I, alg


def test_criterion_03_recurrences(record_property):
    """Recurrences for F, G and U hold exactly on 1000 random lasso models."""
    checks = 0
    for rng, I, alg in _random_models(1000, 303):
        A = rand_formula(rng, 2)
        B = rand_formula(rng, 2)
        ev = TemporalEvaluator(I, alg)
        t, s = alg.tnorm, alg.snorm
        for n in range(I.prefix + 2 * I.loop + 1):
            for w in I.worlds:
                v = lambda f, m=n: ev.value(f, m, w)  # noqa: E731
                assert v(Eventually(A)) == s(v(A), v(Eventually(A), n + 1))
                assert v(Always(A)) == t(v(A), v(Always(A), n + 1))
                assert v(Until(A, B)) == s(v(B), t(v(A), v(Until(A, B), n + 1)))
                checks += 3
    record_property("checks", checks)


def test_criterion_04_saturation(record_property):
    """Bounded operators equal unbounded ones at t = p+2l and t = p+2l+7."""
    checks = 0
    for rng, I, alg in _random_models(1000, 303):
        A = rand_formula(rng, 2)
        B = rand_formula(rng, 2)
        ev = TemporalEvaluator(I, alg)
        base = I.prefix + 2 * I.loop
        for bound in (base, base + 7):
            pairs = [
                (Eventually(A), BoundedEventually(bound, A)),
                (Always(A), BoundedAlways(bound, A)),
                (Until(A, B), BoundedUntil(bound, A, B)),
            ]
            for n in range(base + 1):
                for w in I.worlds:
                    for unbounded, bounded in pairs:
                        assert ev.value(unbounded, n, w) == ev.value(bounded, n, w)
                        checks += 1
    record_property("checks", checks)


def test_criterion_05_klm_suite(record_property):
    """KLM postulates over 2 worlds, C_2, 2 props, coherent Goedel models, under 60 s."""
    start = time.perf_counter()
    report = klm_suite(SearchSpace(2, Scale(2), ("a", "b")))
    elapsed = time.perf_counter() - start
    counts = {name: len(r.counterexamples) for name, r in report.results.items()}
    record_property("counterexamples", counts)
    record_property("seconds", f"{elapsed:.1f}")
    for name in ("Reflexivity", "LLE", "RW", "And", "Or", "CM"):
        assert counts[name] == 0, name
    assert elapsed < 60


# one formula per binary truth function of a and b
TRUTH_FUNCTIONS = [
    "bot", "top", "a", "b", "~a", "~b", "a & b", "a | b", "a -> b", "b -> a",
    "~(a & b)", "~(a | b)", "a & ~b", "~a & b", "(a -> b) & (b -> a)", "~((a -> b) & (b -> a))",
]  # fmt: skip


def _classical(w_val, text):
    a, b = w_val["a"], w_val["b"]
    table = {
        "bot": False, "top": True, "a": a, "b": b, "~a": not a, "~b": not b,
        "a & b": a and b, "a | b": a or b, "a -> b": (not a) or b, "b -> a": (not b) or a,
        "~(a & b)": not (a and b), "~(a | b)": not (a or b), "a & ~b": a and not b,
        "~a & b": (not a) and b, "(a -> b) & (b -> a)": a == b, "~((a -> b) & (b -> a))": a != b,
    }  # fmt: skip
    return table[text]


def test_criterion_06_two_valued_collapse(record_property):
    """Two-valued single-preference models agree with classical KLM on all 256 conditionals."""
    rng = rng_for(606)
    formulas = {text: P(text) for text in TRUTH_FUNCTIONS}
    checked = literal = 0
    for _ in range(200):
        k = rng.randint(1, 4)
        worlds = tuple(f"w{i + 1}" for i in range(k))
        base = rng.choice(all_strict_orders(worlds))
        bits = {w: {"a": rng.random() < 0.5, "b": rng.random() < 0.5} for w in worlds}
        valuation = {(w, p): Q(int(bits[w][p])) for w in worlds for p in ("a", "b")}
        truth = {(w, t): _classical(bits[w], t) for w in worlds for t in TRUTH_FUNCTIONS}
        # the single order made faithful to each antecedent
        prefs = {
            formula_key(f): faithful_lift(base, {w: int(truth[(w, t)]) for w in worlds}) for t, f in formulas.items()
        }
        M = PreferentialInterpretation(worlds, valuation, prefs)
        shared = PreferentialInterpretation(worlds, valuation, {formula_key(f): base for f in formulas.values()})
        for (ta, A), (tb, B) in itertools.product(formulas.items(), repeat=2):
            expected = classical_preferential(worlds, lambda w, t: truth[(w, t)], base, ta, tb)
            gi = GradedImplication(Typ(A), B, Cmp.GE, ONE)
            assert satisfies(M, gi) == expected, (ta, tb, bits, base)
            checked += 1
            # where the shared order already is faithful to A, it must agree as it stands
            if all((u, v) in base for u in worlds for v in worlds if truth[(u, ta)] and not truth[(v, ta)]):
                assert satisfies(shared, gi) == expected
                literal += 1
    record_property("conditionals", checked)
    record_property("shared_order_faithful_cases", literal)


def test_criterion_07_coherence_hierarchy(record_property):
    """100 constructed faithful-but-not-coherent relations are classified as such."""
    rng = rng_for(707)
    built = 0
    while built < 100:
        k = rng.randint(2, 5)
        worlds = tuple(f"w{i + 1}" for i in range(k))
        scores = {w: Q(rng.randint(0, 2), 2) for w in worlds}
        ties = [(x, y) for x in worlds for y in worlds if x != y and scores[x] == scores[y]]
        if not ties:
            continue
        extra = rng.sample(ties, 1)
        rel = transitive_closure(order_by_score(scores) | frozenset(extra))
        valuation = {(w, p): scores[w] for w in worlds for p in ("a", "b")}
        M = PreferentialInterpretation(worlds, valuation, {"a": rel, "b": order_by_score(scores)})
        report = check_coherence(M)
        assert report.entry("a").classification() == "faithful"
        assert report.entry("a").coherence_violations
        assert report.entry("b").classification() == "coherent"
        assert not report.coherent and report.faithful
        built += 1
    record_property("cases", built)


def _rand_graph(rng):
    k = rng.randint(1, 4)
    args = tuple("abcd"[:k])
    n = rng.randint(1, 3)
    base = {a: Q(rng.randint(0, n), n) for a in args}
    weights = {}
    for src, dst in itertools.product(args, repeat=2):
        if rng.random() < 0.4:
            weights[(src, dst)] = Q(rng.choice([-2, -1, -1, 1, 1, 2]), rng.choice([1, 2]))
    return ArgGraph(args, base, weights), Scale(n)


def test_criterion_08_argumentation(record_property):
    """Fixed-point interpretations are coherent; flip-flop loops with length 2; a attacks b has one fixpoint."""
    rng = rng_for(808)
    nonempty = 0
    for _ in range(50):
        G, scale = _rand_graph(rng)
        found = fixpoints(G, scale)
        if not found:
            continue
        nonempty += 1
        M = to_interpretation(found)
        subjects = [Prop(a) for a in G.arguments]
        assert check_coherence(M, subjects).coherent
        for a in G.arguments:
            rel = preference_relation(M, Prop(a))
            for (i, s), (j, t) in itertools.product(enumerate(found), repeat=2):
                assert ((f"w{i + 1}", f"w{j + 1}") in rel) == (s[a] > t[a])
    record_property("graphs_with_fixpoints", f"{nonempty}/50")
    assert nonempty > 0

    mutual = ArgGraph(("a", "b"), {"a": ONE, "b": ONE}, {("a", "b"): -ONE, ("b", "a"): -ONE})
    tr = trajectory(mutual, {"a": 1, "b": 1}, Scale(1))
    assert tr.loop == 2

    attack = ArgGraph(("a", "b"), {"a": ONE, "b": ONE}, {("a", "b"): -ONE})
    scale = Scale(2)
    brute = [
        {"a": va, "b": vb}
        for va, vb in itertools.product(scale.members(), repeat=2)
        if (scale.round(ONE), scale.round(ONE - va)) == (va, vb)
    ]
    assert brute == [{"a": ONE, "b": ZERO}]
    assert fixpoints(attack, scale) == brute


def test_criterion_09_professor_loan(record_property):
    """Loan/professor formula SAT on a 2-world lasso; a one-position mutation breaks only the G conjunct."""
    I = load_interpretation((DATA / "loan.model").read_text())
    (alpha,) = parse_kb((DATA / "loan.kb").read_text()).strict
    first, second = alpha.left, alpha.right
    oracle = Unrolled(I)
    assert msat(I, 0, alpha) and oracle.sat(alpha, 0)

    val = dict(I.valuation)
    val[(1, "w1", "teaches")] = Q(1, 2)
    J = type(I)(I.worlds, I.prefix, I.loop, val, I.prefs, I.pref_mode)
    oracle_j = Unrolled(J)
    assert not msat(J, 0, first) and not oracle_j.sat(first, 0)
    assert msat(J, 0, second) and oracle_j.sat(second, 0)
    # the leaf under G still holds at time 0; it fails at time 1
    assert msat(J, 0, first.arg) and not msat(J, 1, first.arg)

    # the loan implication is only required at time 0
    val = dict(I.valuation)
    val[(1, "w2", "lives_in_town")] = ONE
    L = type(I)(I.worlds, I.prefix, I.loop, val, I.prefs, I.pref_mode)
    assert msat(L, 0, alpha) and not msat(L, 1, second)
    record_property("mutated", "t=1 w1 teaches=1/2")


def test_criterion_10_countermodels_self_certify(tmp_path, capsys, record_property):
    """500 fuzzed entail runs: every printed countermodel satisfies K and violates the query."""
    rng = rng_for(1010)
    spaces = [(1, 1, 0, 1), (1, 2, 0, 2), (2, 1, 1, 1), (2, 2, 0, 1), (1, 1, 1, 2), (2, 1, 0, 2)]
    counter = entailed = 0
    kb_file = tmp_path / "kb"
    model_file = tmp_path / "model"
    for i in range(500):
        worlds, n, prefix, loop = rng.choice(spaces)
        kb = [rand_graded(rng, 1, scale=Scale(n)) for _ in range(rng.randint(0, 2))]
        query = rand_graded(rng, 1, scale=Scale(n))
        kb_file.write_text("".join(f"strict: {print_graded(a)}\n" for a in kb))
        argv = ["entail", str(kb_file), print_graded(query), "--worlds", str(worlds), "--scale", str(n)]
        argv += ["--prefix", str(prefix), "--loop", str(loop)]
        code = main(argv)
        out = capsys.readouterr().out
        assert code in (0, 1), out
        if code == 0:
            entailed += 1
            continue
        counter += 1
        text = out.split("\n", 1)[1]
        model_file.write_text(text)
        I = load_interpretation(model_file.read_text())
        assert is_model(I, kb) and not is_model(I, [query])
        oracle = Unrolled(I)
        assert all(oracle.sat(a, 0) for a in kb) and not oracle.sat(query, 0)
    record_property("countermodels", counter)
    record_property("entailed", entailed)
    assert counter > 0
