"""
Time on a lasso
===============

Traces are a finite prefix followed by a loop that repeats forever.  The
professor/loan knowledge base mixes a graded implication under ``G`` (checked
at every step) with one that is only required at time 0.
"""

from fractions import Fraction
from pathlib import Path

from typtemporal import TemporalEvaluator, load_interpretation, parse_graded
from typtemporal.parser import parse_formula

data = Path(__file__).parent / "data"
I = load_interpretation((data / "loan.model").read_text())
print(f"prefix={I.prefix} loop={I.loop}; times 0..7 map to positions", [I.position(n) for n in range(8)])

ev = TemporalEvaluator(I)
for text in ("teaches U retired", "F granted_loan", "T(F granted_loan)", "X retired", "G[2] teaches"):
    f = parse_formula(text)
    print(f"{text:20s}", [[str(ev.value(f, n, w)) for n in range(5)] for w in I.worlds])

alpha = parse_graded((data / "loan.kb").read_text().split(":", 1)[1])
print("whole formula at 0:", ev.sat(alpha, 0))
print("G leaf per time:   ", ev.sat_table(alpha.left.arg))
print("loan leaf per time:", ev.sat_table(alpha.right))

# w1 teaches only half-heartedly at time 1: the G conjunct breaks there
val = dict(I.valuation)
val[(1, "w1", "teaches")] = Fraction(1, 2)
J = type(I)(I.worlds, I.prefix, I.loop, val, I.prefs, I.pref_mode)
ev = TemporalEvaluator(J)
print("after mutation:", ev.sat(alpha.left, 0), ev.sat(alpha.right, 0))
