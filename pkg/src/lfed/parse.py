"""Recursive-descent parser for the polynomial text syntax.

Grammar (whitespace is insignificant)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom ('^' INT)?
    atom   := INT ('/' INT)? | 'x' | 'y' | 'z' | '(' expr ')'

``z`` denotes the generator of the session field and is rejected over Q.
Juxtaposition is not accepted; multiplication needs an explicit ``*``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union

from .field import Coeff, FieldSpec
from .poly import BiPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([xyz])|(->|[-+*/^(),]))")


class PolySyntaxError(ValueError):
    """Malformed polynomial text; ``column`` is 1-based."""

    def __init__(self, message: str, text: str, column: int):
        super().__init__(f"{message} at column {column}: {text!r}")
        self.reason = message
        self.text = text
        self.column = column


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
            raise PolySyntaxError(f"unexpected character {text[col - 1]!r}", text, col)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1) + 1))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2), m.start(2) + 1))
        else:
            tokens.append(("op", m.group(3), m.start(3) + 1))
        pos = m.end()
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, field: FieldSpec):
        self.text = text
        self.field = field
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def fail(self, message: str, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(message, self.text, tok[2])

    def expect(self, value: str):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != value:
            self.fail(f"expected {value!r}")
        return self.take()

    def parse(self) -> BiPoly:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        f = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return f

    def expr(self) -> BiPoly:
        f = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> BiPoly:
        f = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            f = f * self.unary()
        return f

    def unary(self) -> BiPoly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            f = self.unary()
            return -f if tok[1] == "-" else f
        return self.power()

    def power(self) -> BiPoly:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                self.fail("exponent must be a nonnegative integer literal")
            self.take()
            return base ** int(tok[1])
        return base

    def atom(self) -> BiPoly:
        tok = self.peek()
        kind, value, _ = tok
        if kind == "int":
            self.take()
            q = Fraction(int(value))
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                den = self.peek()
                if den[0] != "int":
                    self.fail("expected integer denominator")
                self.take()
                if int(den[1]) == 0:
                    self.fail("zero denominator", den)
                q = q / int(den[1])
            return BiPoly.constant(self.field, q)
        if kind == "var":
            self.take()
            if value == "x":
                return BiPoly.x(self.field)
            if value == "y":
                return BiPoly.y(self.field)
            if not self.field.has_generator:
                self.fail(f"'z' is not defined over {self.field}", tok)
            return BiPoly.constant(self.field, self.field.gen())
        if kind == "op" and value == "(":
            self.take()
            f = self.expr()
            self.expect(")")
            return f
        if kind == "end":
            self.fail("unexpected end of input")
        self.fail(f"unexpected {value!r}")


def parse_poly(text: str, field: FieldSpec) -> BiPoly:
    """Parse polynomial text over ``field``."""
    return _Parser(text, field).parse()


def parse_coeff(text: str, field: FieldSpec) -> Coeff:
    """Parse text that must denote a constant, e.g. ``-1`` or ``z^2``."""
    f = parse_poly(text, field)
    if not f.is_constant():
        raise ValueError(f"{text!r} is not a constant")
    return f.coeff(0, 0)


def as_poly(value: Union[str, BiPoly], field: FieldSpec) -> BiPoly:
    if isinstance(value, BiPoly):
        return value
    return parse_poly(value, field)


def as_coeff(value, field: FieldSpec) -> Coeff:
    if isinstance(value, str):
        return parse_coeff(value, field)
    return field(value)
