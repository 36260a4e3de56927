"""Recursive-descent parser for the ASCII formula language.

Object level, loosest to tightest::

    formula := until ("->" formula)?
    until   := disj (("U" | "U[" INT "]") until)?
    disj    := conj ("|" conj)*
    conj    := unary ("&" unary)*
    unary   := "~" unary | "T" "(" formula ")" | "X" unary
             | "F" ("[" INT "]")? unary | "G" ("[" INT "]")? unary
             | "(" formula ")" | "top" | "bot" | IDENT

Meta level (temporal graded formulas) reuses ``~ & U X F G`` over leaves of the
form ``"(" formula ")" (">=" | "<=") DEGREE`` where the parenthesized formula
must be an implication.  A ``(`` at meta level is first tried as such a leaf
and otherwise read as a parenthesized meta formula.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import parse_degree
from .errors import NestedTypicalityError, ParseError, ThresholdRangeError
from .formulas import (
    BOT,
    TOP,
    Always,
    And,
    BoundedAlways,
    BoundedEventually,
    BoundedUntil,
    Cmp,
    Eventually,
    Formula,
    GradedFormula,
    GradedImplication,
    Implies,
    MetaAlways,
    MetaAnd,
    MetaEventually,
    MetaNext,
    MetaNot,
    MetaUntil,
    Next,
    Not,
    Or,
    Prop,
    Typ,
    Until,
    has_typicality,
)

KEYWORDS = frozenset({"T", "X", "F", "G", "U", "top", "bot"})

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d+)?(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>->|>=|<=|[()\[\]~&|])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "ident", "op", "eof"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    # -- token helpers

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("op", "ident") and t.text == text

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}")
        return self.advance()

    def fail(self, message: str):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"{message}, found {found}", t.pos)

    def expect_eof(self):
        if self.tok.kind != "eof":
            self.fail("unexpected trailing input")

    def bound(self) -> int:
        self.expect("[")
        t = self.tok
        if t.kind != "num" or not t.text.isdigit():
            self.fail("expected a non-negative integer bound")
        self.advance()
        self.expect("]")
        return int(t.text)

    # -- object level

    def formula(self) -> Formula:
        left = self.until()
        if self.at("->"):
            self.advance()
            return Implies(left, self.formula())
        return left

    def until(self) -> Formula:
        left = self.disj()
        if self.at("U"):
            self.advance()
            if self.at("["):
                t = self.bound()
                return BoundedUntil(t, left, self.until())
            return Until(left, self.until())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.at("|"):
            self.advance()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.at("&"):
            self.advance()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        t = self.tok
        if self.at("~"):
            self.advance()
            return Not(self.unary())
        if self.at("("):
            self.advance()
            f = self.formula()
            self.expect(")")
            return f
        if t.kind != "ident":
            self.fail("expected a formula")
        if t.text == "T":
            self.advance()
            self.expect("(")
            arg = self.formula()
            if has_typicality(arg):
                raise NestedTypicalityError("the typicality operator cannot be nested", t.pos)
            self.expect(")")
            return Typ(arg)
        if t.text == "X":
            self.advance()
            return Next(self.unary())
        if t.text in ("F", "G"):
            self.advance()
            if self.at("["):
                b = self.bound()
                cls = BoundedEventually if t.text == "F" else BoundedAlways
                return cls(b, self.unary())
            cls = Eventually if t.text == "F" else Always
            return cls(self.unary())
        if t.text == "top":
            self.advance()
            return TOP
        if t.text == "bot":
            self.advance()
            return BOT
        if t.text in KEYWORDS:
            self.fail(f"keyword {t.text!r} cannot be used as a proposition")
        self.advance()
        return Prop(t.text)

    # -- meta level

    def meta(self) -> GradedFormula:
        left = self.meta_conj()
        if self.at("U"):
            self.advance()
            return MetaUntil(left, self.meta())
        return left

    def meta_conj(self) -> GradedFormula:
        g = self.meta_unary()
        while self.at("&"):
            self.advance()
            g = MetaAnd(g, self.meta_unary())
        return g

    def meta_unary(self) -> GradedFormula:
        t = self.tok
        if self.at("~"):
            self.advance()
            return MetaNot(self.meta_unary())
        if t.kind == "ident" and t.text in ("X", "F", "G"):
            self.advance()
            if self.at("["):
                self.fail("bounded operators are not available on graded formulas")
            cls = {"X": MetaNext, "F": MetaEventually, "G": MetaAlways}[t.text]
            return cls(self.meta_unary())
        if self.at("("):
            start = self.i
            f = self.leaf_prefix()
            if f is not None:
                return self.leaf_rest(f, self.tokens[start].pos)
            self.i = start
            self.advance()
            g = self.meta()
            self.expect(")")
            return g
        self.fail("expected a graded implication '(A -> B) >= q'")

    def leaf_prefix(self):
        """Read ``( formula )`` followed by a comparison, or return None."""
        try:
            self.expect("(")
            f = self.formula()
            self.expect(")")
        except NestedTypicalityError:
            raise
        except ParseError:
            return None
        if self.at(">=") or self.at("<="):
            return f
        return None

    def leaf_rest(self, f: Formula, pos: int) -> GradedImplication:
        cmp = Cmp(self.advance().text)
        t = self.tok
        if t.kind != "num":
            self.fail("expected a degree after the comparison")
        self.advance()
        value = _threshold(t)
        if not isinstance(f, Implies):
            raise ParseError("a graded comparison needs an implication 'A -> B'", pos)
        return GradedImplication(f.left, f.right, cmp, value)


def _threshold(t: Token) -> Fraction:
    try:
        return parse_degree(t.text)
    except ParseError:
        raise ThresholdRangeError(f"threshold {t.text} is outside [0, 1]", t.pos) from None


def parse_formula(text: str) -> Formula:
    """Parse an object formula such as ``T(student) -> has_Classes``."""
    p = _Parser(text)
    f = p.formula()
    p.expect_eof()
    return f


def parse_graded(text: str) -> GradedFormula:
    """Parse a temporal graded formula such as ``G((T(a) -> b) >= 0.7)``."""
    p = _Parser(text)
    g = p.meta()
    p.expect_eof()
    return g
