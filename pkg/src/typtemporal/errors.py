"""Exception hierarchy.

Errors fall into three families that the command line maps onto exit codes:
parse errors (2), semantic errors (3) and guard violations (4).
"""


class LogicError(Exception):
    """Base class for every error raised by this package."""


class ParseError(LogicError, ValueError):
    """Malformed input text. ``position`` is a character offset when known."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NestedTypicalityError(ParseError):
    pass


class ThresholdRangeError(ParseError):
    pass


class SemanticError(LogicError):
    """The input is well formed but cannot be evaluated as requested."""


class MissingPropError(SemanticError):
    pass


class MissingPreferenceError(SemanticError):
    pass


class TemporalOperatorError(SemanticError):
    pass


class NonIdempotentAlgebraError(SemanticError):
    pass


class InvalidPreferenceError(SemanticError):
    """A preference relation is not a strict partial order."""


class UnknownWorldError(SemanticError):
    pass


class GuardError(LogicError):
    """A combinatorial or iteration guard was exceeded."""


class SpaceTooLargeError(GuardError):
    def __init__(self, message, cardinality=None):
        self.cardinality = cardinality
        super().__init__(message)


class HorizonExceededError(GuardError):
    pass
