"""
Entailment by enumeration
=========================

Within a finite search space (worlds, degrees, lasso shape) every model is
visited; the first one satisfying the knowledge base but not the query is a
countermodel.  The KLM postulates are checked model by model.
"""

from typtemporal import Scale, SearchSpace, entails, klm_suite, parse_graded
from typtemporal.entailment import PrefEnum
from typtemporal.files import dump_interpretation
from typtemporal.parser import parse_formula

space = SearchSpace(2, Scale(2))
kb = [parse_graded("(T(bird) -> flies) >= 1"), parse_graded("(T(bird) -> wings) >= 1")]
print(entails(kb, parse_graded("(T(bird) -> flies & wings) >= 1"), space).headline())

verdict = entails(kb, parse_graded("(bird -> flies) >= 1/2"), space)
print(verdict.headline(), "after", verdict.models_checked, "models")
print(dump_interpretation(verdict.countermodel))

# temporal query over a lasso with one prefix step
verdict = entails([parse_graded("G((a -> b) >= 1)")], parse_graded("X((a -> b) >= 1)"), SearchSpace(1, Scale(1), prefix=1))
print(verdict.headline())

report = klm_suite(SearchSpace(2, Scale(2), ("a", "b")), [parse_formula(t) for t in ("a", "b", "a & b")])
print("\n".join(report.lines()))

# with arbitrary, unrelated orders per formula cautious monotonicity can fail
loose = SearchSpace(2, Scale(1), ("a", "b"), pref_enum=PrefEnum.ALL_STRICT_ORDERS)
for line in klm_suite(loose, [parse_formula("a"), parse_formula("b")]).lines():
    if line.startswith(("PASS", "FAIL", "  counterexample")):
        print(line)
