"""Exact truth degrees, the finite scales C_n and the combination functions.

Degrees are :class:`fractions.Fraction` values constrained to [0, 1].  Floats
are refused: lasso saturation and entailment both rely on exact comparisons.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .errors import ParseError

Degree = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

_DEGREE_RE = re.compile(r"^\s*(\d+(?:\.\d+)?)(?:\s*/\s*(\d+))?\s*$")
_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+(?:\.\d+)?)(?:\s*/\s*(\d+))?\s*$")


def _parse_rational(text: str, pattern) -> Fraction:
    m = pattern.match(text)
    if not m:
        raise ParseError(f"malformed number {text!r}")
    value = Fraction(m.group(1))
    if m.group(2) is not None:
        den = int(m.group(2))
        if den == 0:
            raise ParseError(f"zero denominator in {text!r}")
        value /= den
    return value


def parse_rational(text: str) -> Fraction:
    """Parse a signed rational such as ``-40``, ``+2.5`` or ``-1/3``."""
    return _parse_rational(text, _RATIONAL_RE)


def parse_degree(text: str) -> Degree:
    """Parse ``k/m``, a decimal such as ``0.8``, or ``0``/``1`` into a degree.

    Decimals are read exactly (``0.8`` is 4/5).  Values outside [0, 1] raise
    :class:`ParseError`.
    """
    value = _parse_rational(text, _DEGREE_RE)
    if not 0 <= value <= 1:
        raise ParseError(f"degree {text!r} is outside [0, 1]")
    return value


def degree(value: Union[int, str, Fraction]) -> Degree:
    """Coerce ``value`` to a validated degree."""
    if isinstance(value, str):
        return parse_degree(value)
    if isinstance(value, float):
        raise TypeError("degrees must be exact; pass a Fraction or a string")
    d = Fraction(value)
    if not 0 <= d <= 1:
        raise ValueError(f"degree {d} is outside [0, 1]")
    return d


def format_degree(d: Fraction) -> str:
    """Canonical text of a rational: reduced ``k/m``, or an integer."""
    return str(Fraction(d))


@dataclass(frozen=True)
class Scale:
    """The finite truth space C_n = {0, 1/n, ..., n/n}."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"scale denominator must be a positive integer, got {self.n!r}")

    def members(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(k, self.n) for k in range(self.n + 1))

    def __contains__(self, d) -> bool:
        d = Fraction(d)
        return 0 <= d <= 1 and (d * self.n).denominator == 1

    def __len__(self) -> int:
        return self.n + 1

    def round(self, x: Fraction) -> Fraction:
        """Nearest member of the scale; exact halves go to the lower member."""
        x = min(max(Fraction(x), ZERO), ONE)
        scaled = x * self.n
        k = scaled.numerator // scaled.denominator
        if scaled - k > Fraction(1, 2):
            k += 1
        return Fraction(k, self.n)


BinOp = Callable[[Fraction, Fraction], Fraction]
UnOp = Callable[[Fraction], Fraction]


@dataclass(frozen=True)
class Algebra:
    """A choice of t-norm, s-norm, implication and negation.

    ``idempotent`` must be true only when ``tnorm`` is min and ``snorm`` is max;
    the unbounded temporal operators are evaluated exactly under that
    assumption and are refused otherwise.
    """

    name: str
    tnorm: BinOp
    snorm: BinOp
    implication: BinOp
    negation: UnOp
    idempotent: bool = False

    def __repr__(self):
        return f"Algebra({self.name!r})"


def _goedel_implication(a, b):
    return ONE if a <= b else b


def _goedel_negation(a):
    return ONE if a == 0 else ZERO


def _zadeh_negation(a):
    return ONE - a


def _zadeh_implication(a, b):
    return max(ONE - a, b)


GOEDEL = Algebra("goedel", min, max, _goedel_implication, _goedel_negation, idempotent=True)
ZADEH = Algebra("zadeh", min, max, _zadeh_implication, _zadeh_negation, idempotent=True)

ALGEBRAS = {"goedel": GOEDEL, "zadeh": ZADEH}


def get_algebra(name: str) -> Algebra:
    try:
        return ALGEBRAS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown algebra {name!r}; choose from {sorted(ALGEBRAS)}") from None


def tnorm(a: Degree, b: Degree, alg: Algebra = GOEDEL) -> Degree:
    return alg.tnorm(a, b)


def snorm(a: Degree, b: Degree, alg: Algebra = GOEDEL) -> Degree:
    return alg.snorm(a, b)


def implication(a: Degree, b: Degree, alg: Algebra = GOEDEL) -> Degree:
    return alg.implication(a, b)


def negation(a: Degree, alg: Algebra = GOEDEL) -> Degree:
    return alg.negation(a)
