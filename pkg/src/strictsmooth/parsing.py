"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace insensitive, no implicit multiplication):

    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := '-' factor | power
    power   := atom ('^' INT)?
    atom    := INT ('/' INT)? | NAME | '(' expr ')'

Exponents are nonnegative integer literals.  A '/' is only legal between
two integer literals, where it forms an exact coefficient.  Errors carry
line and column numbers.
"""

from __future__ import annotations

from .errors import ParseError
from .poly import Polynomial


_SINGLE = {
    "+": "PLUS",
    "-": "MINUS",
    "*": "STAR",
    "^": "CARET",
    "/": "SLASH",
    "(": "LPAREN",
    ")": "RPAREN",
}


def tokenize(text: str):
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch in _SINGLE:
            tokens.append((_SINGLE[ch], ch, line, col))
            col += 1
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < len(text) and text[i].isdigit():
                i += 1
            tokens.append(("INT", text[start:i], line, col))
            col += i - start
            continue
        if ch.isalpha() or ch == "_":
            start = i
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(("NAME", text[start:i], line, col))
            col += i - start
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(("END", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens, names, nvars, field):
        self.tokens = tokens
        self.pos = 0
        self.index = {name: i for i, name in enumerate(names)}
        self.nvars = nvars
        self.field = field

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message, token=None):
        token = token or self.peek()
        raise ParseError(message, token[2], token[3])

    def expect(self, kind, message):
        tok = self.peek()
        if tok[0] != kind:
            self.error(message, tok)
        return self.advance()

    def parse(self) -> Polynomial:
        value = self.expr()
        tok = self.peek()
        if tok[0] != "END":
            self.error(f"unexpected token {tok[1]!r}", tok)
        return value

    def expr(self) -> Polynomial:
        value = self.term()
        while self.peek()[0] in ("PLUS", "MINUS"):
            op = self.advance()
            rhs = self.term()
            value = value + rhs if op[0] == "PLUS" else value - rhs
        return value

    def term(self) -> Polynomial:
        value = self.factor()
        while self.peek()[0] == "STAR":
            self.advance()
            value = value * self.factor()
        return value

    def factor(self) -> Polynomial:
        if self.peek()[0] == "MINUS":
            self.advance()
            return -self.factor()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "CARET":
            caret = self.advance()
            tok = self.peek()
            if tok[0] != "INT":
                self.error(
                    "exponent must be a nonnegative integer literal", tok
                )
            self.advance()
            return base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.peek()
        if tok[0] == "INT":
            self.advance()
            numerator = int(tok[1])
            if self.peek()[0] == "SLASH":
                self.advance()
                den = self.peek()
                if den[0] != "INT":
                    self.error("'/' is only allowed between integer literals", den)
                self.advance()
                if int(den[1]) == 0:
                    self.error("zero denominator", den)
                try:
                    value = self.field.from_rational(numerator, int(den[1]))
                except ZeroDivisionError as exc:
                    raise ParseError(str(exc), den[2], den[3]) from None
                return Polynomial.constant(value, self.nvars, self.field)
            return Polynomial.constant(
                self.field.from_int(numerator), self.nvars, self.field
            )
        if tok[0] == "NAME":
            self.advance()
            idx = self.index.get(tok[1])
            if idx is None:
                self.error(f"unknown variable {tok[1]!r}", tok)
            return Polynomial.variable(idx, self.nvars, self.field)
        if tok[0] == "LPAREN":
            self.advance()
            value = self.expr()
            self.expect("RPAREN", "expected ')'")
            return value
        if tok[0] == "END":
            self.error("unexpected end of expression", tok)
        self.error(f"unexpected token {tok[1]!r}", tok)


def parse_expression(text: str, names, field) -> Polynomial:
    """Parse `text` into an exact polynomial in the given named variables."""
    names = tuple(names)
    tokens = tokenize(text)
    return _Parser(tokens, names, len(names), field).parse()
