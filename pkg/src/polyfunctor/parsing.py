"""Text grammars used by the CLI and the test fixtures.

Polynomials: terms over variables matching [a-zA-Z][a-zA-Z0-9_]*, exact
integer or integer/integer coefficients, operators + - * and ^ for powers,
with parentheses allowed, e.g. ``x11*x22 - x12*x21``.  Printing a polynomial
and re-parsing it in the same ring gives back an equal value.

Matrices are rows separated by ';' with ',' separated entries.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .fields import FieldDescriptor, Scalar
from .rings import GradedPoly, GradedRing

_TOKEN = re.compile(
    r"\s*(?:(?P<name>[a-zA-Z][a-zA-Z0-9_]*)|(?P<int>\d+)|(?P<op>[-+*^()/]))"
)

NAME_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:]
            stripped = rest.lstrip()
            if not stripped:
                break
            at = pos + (len(rest) - len(stripped))
            raise ParseError(f"unexpected character {stripped[0]!r}", at, text)
        if m.group("name"):
            tokens.append(("name", m.group("name"), m.start("name")))
        elif m.group("int"):
            tokens.append(("int", m.group("int"), m.start("int")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _PolyParser:
    def __init__(self, text: str, ring: GradedRing):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, value, pos = self.next()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}", pos, self.text)

    def parse(self) -> GradedPoly:
        poly = self.expression()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {value!r}", pos, self.text)
        return poly

    def expression(self) -> GradedPoly:
        kind, value, _ = self.peek()
        negate = False
        if kind == "op" and value in "+-":
            self.next()
            negate = value == "-"
        poly = self.term()
        if negate:
            poly = -poly
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.next()
                rhs = self.term()
                poly = poly - rhs if value == "-" else poly + rhs
            else:
                return poly

    def term(self) -> GradedPoly:
        poly = self.factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.next()
                poly = poly * self.factor()
            else:
                return poly

    def factor(self) -> GradedPoly:
        poly = self.atom()
        kind, value, _ = self.peek()
        if kind == "op" and value == "^":
            self.next()
            kind, value, pos = self.next()
            if kind != "int":
                raise ParseError("expected integer exponent", pos, self.text)
            poly = poly ** int(value)
        return poly

    def atom(self) -> GradedPoly:
        kind, value, pos = self.next()
        if kind == "int":
            num = int(value)
            kind2, value2, _ = self.peek()
            if kind2 == "op" and value2 == "/":
                self.next()
                kind3, value3, pos3 = self.next()
                if kind3 != "int":
                    raise ParseError("expected integer denominator", pos3, self.text)
                return self.ring.const(Fraction(num, int(value3)))
            return self.ring.const(num)
        if kind == "name":
            if value not in self.ring._pos:
                raise ParseError(f"unknown variable {value!r}", pos, self.text)
            return self.ring.var(value)
        if kind == "op" and value == "(":
            poly = self.expression()
            self.expect_op(")")
            return poly
        raise ParseError(f"unexpected token {value!r}" if value else "unexpected end of input", pos, self.text)


def parse_polynomial(text: str, ring: GradedRing) -> GradedPoly:
    return _PolyParser(text, ring).parse()


def polynomial_variable_names(text: str) -> tuple[str, ...]:
    """Distinct variable names appearing in a polynomial string, sorted."""
    return tuple(sorted(set(NAME_RE.findall(text))))


def parse_scalar(text: str, field: FieldDescriptor) -> Scalar:
    text = text.strip()
    m = re.fullmatch(r"(-?\d+)(?:/(\d+))?", text)
    if not m:
        raise ParseError(f"bad scalar {text!r}", 0, text)
    num = int(m.group(1))
    if m.group(2):
        return field.scalar(Fraction(num, int(m.group(2))))
    return field.scalar(num)


def parse_matrix(text: str, field: FieldDescriptor) -> list[list[Scalar]]:
    rows = []
    width = None
    for row_text in text.strip().split(";"):
        row = [parse_scalar(entry, field) for entry in row_text.split(",")]
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ParseError("ragged matrix rows", 0, text)
        rows.append(row)
    return rows


def parse_coords(text: str, field: FieldDescriptor) -> tuple[Scalar, ...]:
    return tuple(parse_scalar(entry, field) for entry in text.strip().split(","))
