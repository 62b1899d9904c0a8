"""Parser for the element grammar used by the CLI and the fixtures.

The grammar (whitespace-insensitive) is the same one `Element.__str__` emits:

    element     = [ "-" ] term { ( "+" | "-" ) term } ;
    term        = coefficient [ "*" monomial ] | monomial ;
    coefficient = integer [ "/" integer ] ;
    monomial    = factor { "*" factor } ;
    factor      = identifier [ "^" integer ] ;

so parsing and printing round-trip exactly.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping

from .errors import ParseError
from .gca import Element, Generator, Monomial

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*/^]))")

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _tokenize(text: str, line: int | None = None):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            stray = text[pos:].strip()
            if not stray:
                break
            raise ParseError(f"unexpected character {stray[0]!r}", line, pos + 1)
        number, ident, op = m.groups()
        kind = "num" if number else ("ident" if ident else "op")
        tokens.append((kind, m.group(1) or m.group(2) or m.group(3), m.start(1) if number else m.start(2) if ident else m.start(3)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, generators: Mapping[str, Generator], line=None):
        self.tokens = tokens
        self.i = 0
        self.generators = generators
        self.line = line

    def error(self, message, column=None):
        if column is None:
            column = self.tokens[self.i][2] + 1 if self.i < len(self.tokens) else None
        raise ParseError(message, self.line, column)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, None)

    def take(self, kind=None, value=None):
        k, v, col = self.peek()
        if k is None:
            self.error("unexpected end of expression")
        if kind is not None and k != kind:
            self.error(f"expected {kind}, found {v!r}")
        if value is not None and v != value:
            self.error(f"expected {value!r}, found {v!r}")
        self.i += 1
        return v, col

    def parse(self) -> Element:
        total = Element.zero()
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        total = total + self.term() * sign
        while self.peek()[0] is not None:
            op, _ = self.take("op")
            if op == "+":
                total = total + self.term()
            elif op == "-":
                total = total - self.term()
            else:
                self.error(f"expected '+' or '-', found {op!r}")
        return total

    def term(self) -> Element:
        kind, _, _ = self.peek()
        if kind == "num":
            coeff = self.rational()
            if self.peek()[1] == "*":
                self.take()
                return self.monomial() * coeff
            return Element.scalar(coeff)
        if kind == "ident":
            return self.monomial()
        self.error("expected a coefficient or a generator name")

    def rational(self) -> Fraction:
        num, _ = self.take("num")
        if self.peek()[1] == "/":
            self.take()
            den, col = self.take("num")
            if int(den) == 0:
                self.error("zero denominator", col + 1)
            return Fraction(int(num), int(den))
        return Fraction(int(num))

    def monomial(self) -> Element:
        out = self.factor()
        while self.peek()[1] == "*":
            self.take()
            out = out * self.factor()
        return out

    def factor(self) -> Element:
        name, col = self.take("ident")
        gen = self.generators.get(name)
        if gen is None:
            self.error(f"unknown generator {name!r}", col + 1)
        exponent = 1
        if self.peek()[1] == "^":
            self.take()
            e, ecol = self.take("num")
            exponent = int(e)
            if exponent < 1:
                self.error("exponents must be >= 1", ecol + 1)
        if gen.is_odd and exponent > 1:
            return Element.zero()
        return Element.from_monomial(Monomial.of(gen, exponent))


def parse_element(text: str, generators: Mapping[str, Generator], line: int | None = None) -> Element:
    """Parse an element expression against a name -> generator table."""
    tokens = _tokenize(text, line)
    if not tokens:
        raise ParseError("empty expression", line)
    return _Parser(tokens, generators, line).parse()


def parse_rational(text: str, line: int | None = None) -> Fraction:
    """Parse a rational literal with optional sign, e.g. ``-3/2``."""
    s = text.strip()
    sign = 1
    if s.startswith("-"):
        sign = -1
        s = s[1:]
    elif s.startswith("+"):
        s = s[1:]
    m = re.fullmatch(r"(\d+)(?:\s*/\s*(\d+))?", s.strip())
    if not m:
        raise ParseError(f"not a rational literal: {text!r}", line)
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError("zero denominator", line)
    return Fraction(sign * num, den)
