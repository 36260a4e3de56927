"""
Graded worlds and typical worlds
================================

Three worlds, one proposition ``bird`` held to different degrees.  The
typical birds are the worlds nobody is preferred to.
"""

from fractions import Fraction

from typtemporal import GOEDEL, ZADEH, PreferentialInterpretation, PrefMode, evaluate, implication_degree
from typtemporal.core import check_coherence
from typtemporal.parser import parse_formula
from typtemporal.preferences import order_by_score

vals = {
    ("robin", "bird"): Fraction(1), ("robin", "flies"): Fraction(1),
    ("penguin", "bird"): Fraction(3, 4), ("penguin", "flies"): Fraction(0),
    ("bat", "bird"): Fraction(1, 4), ("bat", "flies"): Fraction(1),
}  # fmt: skip

# coherent mode: the more of a bird, the more typical
M = PreferentialInterpretation(("robin", "penguin", "bat"), vals, {}, PrefMode.COHERENT)
typical_bird = parse_formula("T(bird)")
for w in M.worlds:
    print(f"{w:8s} bird={evaluate(M, w, parse_formula('bird'))}  T(bird)={evaluate(M, w, typical_bird)}")

# typical birds fly, birds in general do not
for text in ("T(bird) -> flies", "bird -> flies"):
    f = parse_formula(text)
    print(text, " goedel:", implication_degree(M, f.left, f.right, GOEDEL), " zadeh:", implication_degree(M, f.left, f.right, ZADEH))

# an explicit order may rank two equally good birds: faithful, not coherent
birds = {**vals, ("ostrich", "bird"): Fraction(3, 4), ("ostrich", "flies"): Fraction(0)}
worlds = M.worlds + ("ostrich",)
scores = {w: birds[(w, "bird")] for w in worlds}
ranked = order_by_score(scores) | {("penguin", "ostrich")}
print("\n".join(check_coherence(PreferentialInterpretation(worlds, birds, {"bird": ranked})).lines()))

# dropping robin < penguin breaks faithfulness as well
broken = order_by_score(scores) - {("robin", "penguin")}
print("\n".join(check_coherence(PreferentialInterpretation(worlds, birds, {"bird": broken})).lines()))
