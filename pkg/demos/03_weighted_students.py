"""
Preferences from weighted conditionals
======================================

Prototypical properties of students carry weights.  A world's score is the
weighted sum of how much it has each property; higher scores are more
typical.  Propositions may be non-crisp.
"""

from fractions import Fraction
from pathlib import Path

from typtemporal import check_weighted_satisfaction, derive_preferences, load_interpretation, parse_kb, world_weight
from typtemporal.weighted import install_preferences

data = Path(__file__).parent / "data"
I = load_interpretation((data / "student.model").read_text())
K = parse_kb((data / "student.kb").read_text())
I = I.with_conditionals(K.weighted)

for w in I.worlds:
    print(w, "weight at t=0:", world_weight(I, K, "student", 0, w))
print("derived <_student at t=0:", sorted(derive_preferences(I, K)[(0, "student")]))
print("model agrees with K:", check_weighted_satisfaction(I, K).satisfied)

# a student who only sometimes attends classes
val = dict(I.valuation)
val[(0, "w", "has_Classes")] = Fraction(7, 10)
soft = type(I)(I.worlds, I.prefix, I.loop, val, I.prefs, I.pref_mode, I.conditionals)
print("non-crisp weight of w:", world_weight(soft, K, "student", 0, "w"))

# freeze the derived order, then tamper with it at t=3
fixed = install_preferences(I, K)
prefs = dict(fixed.prefs)
prefs[(3, "student")] = frozenset({("wp", "w")})
report = check_weighted_satisfaction(fixed.with_prefs(prefs), K)
print("\n".join(report.lines()))
