"""
Argument strengths as worlds
============================

A weighted argumentation graph is iterated with a clamped, rounded weighted
sum.  Fixed points become worlds of a preferential model; whole trajectories
become worlds of a temporal one.
"""

from fractions import Fraction as Q
from pathlib import Path

from typtemporal import Scale, fixpoints, load_timeline, to_interpretation, to_temporal_interpretation, trajectory
from typtemporal.argumentation import ArgGraph
from typtemporal.core import check_coherence, evaluate
from typtemporal.parser import parse_formula, parse_graded
from typtemporal.temporal import TemporalEvaluator

data = Path(__file__).parent / "data"

flip = load_timeline((data / "flipflop.graph").read_text())
for seed in flip.seeds:
    tr = trajectory(flip, seed, Scale(1))
    print("seed", {a: str(v) for a, v in seed.items()}, "-> prefix", tr.prefix, "loop", tr.loop)

attack = load_timeline((data / "attack.graph").read_text())
G = attack.graph_at(0)
found = fixpoints(G, Scale(2))
print("fixpoints of 'a attacks b':", [{a: str(v) for a, v in s.items()} for s in found])

# a richer graph with several fixed points
H = ArgGraph(
    ("a", "b", "c"),
    {"a": Q(1, 2), "b": Q(1, 2), "c": Q(0)},
    {("a", "b"): Q(-1), ("b", "a"): Q(-1), ("a", "c"): Q(1), ("b", "c"): Q(1, 2)},
)
found = fixpoints(H, Scale(2))
M = to_interpretation(found)
for w, s in zip(M.worlds, found):
    print(w, {a: str(v) for a, v in s.items()}, "T(c) =", evaluate(M, w, parse_formula("T(c)")))
print("\n".join(check_coherence(M, [parse_formula(x) for x in H.arguments]).lines()))

I = to_temporal_interpretation(flip, Scale(1))
ev = TemporalEvaluator(I)
print("joint lasso: prefix", I.prefix, "loop", I.loop)
print("G((T(a) -> ~b) >= 1):", ev.sat(parse_graded("G((T(a) -> ~b) >= 1)"), 0))
