"""Many-valued temporal conditional logic with typicality."""

from .algebra import GOEDEL, ZADEH, Algebra, Degree, Scale, degree, format_degree, get_algebra, parse_degree
from .core import PreferentialInterpretation, check_coherence, evaluate, implication_degree, satisfies
from .errors import (
    GuardError,
    HorizonExceededError,
    LogicError,
    MissingPreferenceError,
    MissingPropError,
    NestedTypicalityError,
    NonIdempotentAlgebraError,
    ParseError,
    SemanticError,
    SpaceTooLargeError,
    TemporalOperatorError,
    ThresholdRangeError,
)
from .formulas import formula_key, print_formula, print_graded
from .parser import parse_formula, parse_graded
from .preferences import PrefMode
from .temporal import (
    TemporalEvaluator,
    TemporalInterpretation,
    check_coherence_at,
    implication_degree_at,
    msat,
    satisfies_temporal,
    slice_at,
    teval,
    teval_bounded,
)
from .weighted import WeightedKB, check_weighted_satisfaction, derive_preferences, world_weight

from .argumentation import ArgGraph, GraphTimeline, fixpoints, to_interpretation, to_temporal_interpretation, trajectory
from .entailment import PrefEnum, SearchSpace, entails, klm_suite, one_entails
from .files import dump_interpretation, load_interpretation, load_timeline, parse_kb

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
