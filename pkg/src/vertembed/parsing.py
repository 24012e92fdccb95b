"""Parsing of the human-readable polynomial text format.

The grammar accepts what the renderers in :mod:`vertembed.poly` emit, plus
the usual hand-written variations (redundant parentheses, explicit ``+``
signs, products of parenthesised groups):

    expression := ["+"|"-"] term (("+"|"-") term)*
    term       := factor ("*" factor)*
    factor     := base ("^" ["-"] integer)?
    base       := rational | variable | parameter | "(" expression ")"

``rational`` is an integer or ``p/q``; variables are ``x1..xn`` and
parameters ``k1..km``. Negative exponents are allowed on variables only
(the parameter ring is not a Laurent ring, and a sum cannot be inverted).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import PolynomialParseError
from .poly import LaurentPolynomial, ParametrisedPolynomial

__all__ = ["parse_parametrised_polynomial", "parse_laurent_polynomial", "parse_rational"]

_TOKEN = re.compile(r"\s*(?:(?P<number>\d+(?:/\d+)?)|(?P<name>[xk]\d+)|(?P<op>[-+*^()]))")


def _tokenise(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            tail = text[pos:].strip()
            if not tail:
                break
            raise PolynomialParseError(f"unexpected character {tail[0]!r} at position {pos} in {text!r}")
        pos = match.end()
        for kind in ("number", "name", "op"):
            value = match.group(kind)
            if value is not None:
                tokens.append((kind, value))
                break
    return tokens


class _Parser:
    def __init__(self, text: str, n: int, m: int):
        self.text = text
        self.n = n
        self.m = m
        self.tokens = _tokenise(text)
        self.pos = 0

    def fail(self, message: str):
        raise PolynomialParseError(f"{message} in {self.text!r}")

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        token = self.peek()
        self.pos += 1
        return token

    def expect_op(self, op: str):
        kind, value = self.take()
        if kind != "op" or value != op:
            self.fail(f"expected {op!r}, found {value!r}")

    # grammar ------------------------------------------------------------

    def parse(self) -> ParametrisedPolynomial:
        if not self.tokens:
            self.fail("empty polynomial text")
        result = self.expression()
        if self.pos != len(self.tokens):
            self.fail(f"trailing input starting at {self.peek()[1]!r}")
        return result

    def expression(self) -> ParametrisedPolynomial:
        sign = 1
        kind, value = self.peek()
        if kind == "op" and value in "+-":
            self.take()
            sign = -1 if value == "-" else 1
        result = self.term()
        if sign < 0:
            result = -result
        while True:
            kind, value = self.peek()
            if kind == "op" and value in "+-":
                self.take()
                rhs = self.term()
                result = result - rhs if value == "-" else result + rhs
            else:
                return result

    def term(self) -> ParametrisedPolynomial:
        result = self.factor()
        while True:
            kind, value = self.peek()
            if kind == "op" and value == "*":
                self.take()
                result = result * self.factor()
            else:
                return result

    def factor(self) -> ParametrisedPolynomial:
        kind, value = self.take()
        if kind == "number":
            exp = self.exponent()
            try:
                base = Fraction(value)
                return ParametrisedPolynomial.constant(base ** (1 if exp is None else exp), self.n, self.m)
            except ZeroDivisionError:
                self.fail(f"division by zero in {value!r}")
        if kind == "name":
            letter, index = value[0], int(value[1:])
            exp = self.exponent()
            exp = 1 if exp is None else exp
            if letter == "x":
                if not 1 <= index <= self.n:
                    self.fail(f"variable {value} out of range (n={self.n})")
                return ParametrisedPolynomial.variable(self.n, self.m, index - 1, exp)
            if not 1 <= index <= self.m:
                self.fail(f"parameter {value} out of range (m={self.m})")
            if exp < 0:
                self.fail(f"parameter {value} cannot carry a negative exponent")
            return ParametrisedPolynomial.parameter(self.n, self.m, index - 1, exp)
        if kind == "op" and value == "(":
            inner = self.expression()
            self.expect_op(")")
            exp = self.exponent()
            if exp is None:
                return inner
            if exp < 0:
                self.fail("a parenthesised sum cannot carry a negative exponent")
            return inner**exp
        self.fail(f"unexpected token {value!r}")

    def exponent(self) -> int | None:
        kind, value = self.peek()
        if kind != "op" or value != "^":
            return None
        self.take()
        sign = 1
        kind, value = self.peek()
        if kind == "op" and value == "-":
            self.take()
            sign = -1
        kind, value = self.take()
        if kind != "number" or "/" in value:
            self.fail(f"expected an integer exponent, found {value!r}")
        return sign * int(value)


def parse_parametrised_polynomial(text: str, n: int, m: int) -> ParametrisedPolynomial:
    """Parse a polynomial in x1..xn with coefficients in k1..km."""
    return _Parser(text, n, m).parse()


def parse_laurent_polynomial(text: str, n: int) -> LaurentPolynomial:
    """Parse a parameter-free Laurent polynomial in x1..xn."""
    return parse_parametrised_polynomial(text, n, 0).specialise(())


def parse_rational(value) -> Fraction:
    """Exact rational from an int or a string such as ``-3/4``; floats are rejected."""
    if isinstance(value, bool) or isinstance(value, float):
        raise PolynomialParseError(f"not an exact rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise PolynomialParseError(f"not an exact rational: {value!r}") from exc
    raise PolynomialParseError(f"not an exact rational: {value!r}")
