"""Recursive-descent parser for the expression language of configuration files.

Grammar (whitespace is insignificant)::

    expr     := term (("+" | "-") term)*
    term     := factor (("*" | "/") factor)*
    factor   := ("+" | "-") factor | primary ("^" ["-"] integer)*
    primary  := integer | symbol | "(" expr ")"

``a/b`` between two integers is the rational ``a/b``, so ``1/2*z`` reads as
(1/2)*z.  Unary signs are accepted in factor position so that entries such as
``-y`` can be written directly.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from .scalar import DivisionByZero, FieldError, ScalarExpr, ScalarField, UndeclaredSymbol


class ExpressionSyntaxError(FieldError):
    def __init__(self, message: str, offset: int, text: str):
        super().__init__(f"{message} at offset {offset} in {text!r}")
        self.offset = offset
        self.text = text


class Token(NamedTuple):
    kind: str  # "int", "name", "op", "end"
    value: str
    offset: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*/^()]))")


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            pos = len(text)
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ExpressionSyntaxError(f"unexpected character {text[bad]!r}", bad, text)
        if m.group(1) is not None:
            tokens.append(Token("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(Token("name", m.group(2), m.start(2)))
        else:
            tokens.append(Token("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, field: ScalarField):
        self.text = text
        self.field = field
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        if tok.kind == "end":
            message = "unexpected end of input"
        raise ExpressionSyntaxError(message, tok.offset, self.text)

    def accept(self, *ops: str) -> Token | None:
        if self.tok.kind == "op" and self.tok.value in ops:
            tok = self.tok
            self.i += 1
            return tok
        return None

    def parse(self) -> ScalarExpr:
        value = self.expr()
        if self.tok.kind != "end":
            self.error(f"unexpected token {self.tok.value!r}")
        return value

    def expr(self) -> ScalarExpr:
        value = self.term()
        while True:
            op = self.accept("+", "-")
            if op is None:
                return value
            rhs = self.term()
            value = value + rhs if op.value == "+" else value - rhs

    def term(self) -> ScalarExpr:
        value = self.factor()
        while True:
            op = self.accept("*", "/")
            if op is None:
                return value
            rhs_tok = self.tok
            rhs = self.factor()
            if op.value == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise DivisionByZero(
                        f"division by the zero polynomial at offset {rhs_tok.offset} in {self.text!r}")
                value = value / rhs

    def factor(self) -> ScalarExpr:
        op = self.accept("+", "-")
        if op is not None:
            inner = self.factor()
            return -inner if op.value == "-" else inner
        value = self.primary()
        while self.accept("^"):
            negative = self.accept("-") is not None
            tok = self.tok
            if tok.kind != "int":
                self.error("expected integer exponent")
            self.i += 1
            n = int(tok.value)
            if negative:
                if value.is_zero():
                    raise DivisionByZero(f"zero raised to a negative power in {self.text!r}")
                n = -n
            value = value ** n
        return value

    def primary(self) -> ScalarExpr:
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return self.field.const(int(tok.value))
        if tok.kind == "name":
            self.i += 1
            if tok.value not in self.field:
                raise UndeclaredSymbol(
                    f"undeclared symbol {tok.value!r} at offset {tok.offset} in {self.text!r}")
            return self.field.symbol(tok.value)
        if self.accept("("):
            value = self.expr()
            if not self.accept(")"):
                self.error("expected ')'")
            return value
        self.error(f"unexpected token {tok.value!r}")


def parse_expression(text: str, field: ScalarField) -> ScalarExpr:
    """Parse ``text`` into a canonical expression of ``field``."""
    return _Parser(text, field).parse()
