from fractions import Fraction as Q
from pathlib import Path

import pytest

from typtemporal.files import load_interpretation, parse_kb
from typtemporal.formulas import Prop, WeightedConditional
from typtemporal.parser import parse_graded
from typtemporal.preferences import PrefMode
from typtemporal.temporal import TemporalInterpretation
from typtemporal.weighted import (
    WeightedKB,
    check_weighted_satisfaction,
    derive_preferences,
    install_preferences,
    world_weight,
)

DATA = Path(__file__).resolve().parents[1] / "demos" / "data"


@pytest.fixture
def student():
    I = load_interpretation((DATA / "student.model").read_text())
    K = parse_kb((DATA / "student.kb").read_text())
    return I.with_conditionals(K.weighted), K


def test_student_weights(student):
    I, K = student
    assert world_weight(I, K, "student", 0, "w") == 80
    assert world_weight(I, K, "student", 0, "wp") == 40
    assert (0, "student") in derive_preferences(I, K)
    assert ("w", "wp") in derive_preferences(I, K)[(0, "student")]
    assert ("wp", "w") not in derive_preferences(I, K)[(0, "student")]


def test_student_model_satisfies_kb(student):
    I, K = student
    assert check_weighted_satisfaction(I, K).satisfied


def test_non_crisp_weight():
    val = {(0, "x", "s"): Q(1), (0, "x", "c"): Q(7, 10)}
    I = TemporalInterpretation(("x",), 0, 1, val, {}, PrefMode.COHERENT)
    K = WeightedKB((), (WeightedConditional(Prop("s"), Prop("c"), Q(50)),))
    assert world_weight(I, K, "s", 0, "x") == 35
    assert world_weight(I, K, "c", 0, "x") == 0


def test_equal_weights_incomparable():
    val = {(0, w, p): Q(1) for w in ("x", "y") for p in ("s", "c")}
    I = TemporalInterpretation(("x", "y"), 0, 1, val, {}, PrefMode.COHERENT)
    K = WeightedKB((), (WeightedConditional(Prop("s"), Prop("c"), Q(3)),))
    assert derive_preferences(I, K)[(0, "s")] == frozenset()


def test_installed_prefs_then_flip(student):
    I, K = student
    J = install_preferences(I, K)
    assert J.pref_mode is PrefMode.EXPLICIT
    assert check_weighted_satisfaction(J, K).satisfied
    prefs = dict(J.prefs)
    prefs[(3, "student")] = frozenset({("wp", "w")})
    report = check_weighted_satisfaction(J.with_prefs(prefs), K)
    assert not report.satisfied
    assert {(m.time, m.pair, m.kind) for m in report.mismatches} == {
        (3, ("w", "wp"), "missing"),
        (3, ("wp", "w"), "extra"),
    }
    assert report.lines()[0] == 'MISMATCH t=3 key="student" w wp'


def test_strict_violation_reported(student):
    I, K = student
    bad = parse_graded("(student -> has_Boss) >= 1")
    K2 = WeightedKB((parse_graded("(T(student) -> has_Classes) >= 1"), bad), K.weighted)
    report = check_weighted_satisfaction(I, K2)
    assert report.preferences_agree
    assert report.strict_violations == [bad]
    assert report.lines()[:2] == ["SAT (T(student) -> has_Classes) >= 1", "UNSAT (student -> has_Boss) >= 1"]
