"""Recursive-descent parser for expressions in z, w, zb, wb.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := base ('^' UINT)?
    base   := NUMBER | 'i' | 'z' | 'w' | 'zb' | 'wb'
            | 'conj' '(' expr ')' | '(' expr ')' | '-' base

Unary minus binds tighter than ``^``, so ``-z^2`` is ``(-z)^2``.
Implicit multiplication is not accepted.
"""
from __future__ import annotations

import re

from .expr import ONE, RatExpr, arith, as_expr, conjugate, power, var

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
    r")"
)

_NAMES = {"z", "w", "zb", "wb", "i", "conj"}


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos
        self.text = text


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character", pos, text)
        kind = m.lastgroup
        start = m.start(kind)
        val = m.group(kind)
        if kind == "name" and val not in _NAMES:
            raise ParseError(f"unknown name {val!r}", start, text)
        toks.append((kind, val, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, val: str):
        kind, v, pos = self.take()
        if v != val or kind == "end":
            raise ParseError(f"expected {val!r}", pos, self.text)

    def fail(self, message: str):
        raise ParseError(message, self.peek()[2], self.text)

    def expr(self) -> RatExpr:
        out = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            out = arith(out, rhs, "add" if op == "+" else "sub")
        return out

    def term(self) -> RatExpr:
        out = self.factor()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op, pos = self.take()[1], self.peek()[2]
            rhs = self.factor()
            if op == "/":
                if rhs.is_zero():
                    raise ParseError("division by zero polynomial", pos, self.text)
                out = arith(out, rhs, "div")
            else:
                out = arith(out, rhs, "mul")
        return out

    def factor(self) -> RatExpr:
        out = self.base()
        if self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num" or not val.isdigit():
                raise ParseError("exponent must be a non-negative integer", pos, self.text)
            out = power(out, int(val))
        return out

    def base(self) -> RatExpr:
        kind, val, pos = self.take()
        if kind == "num":
            return as_expr(float(val))
        if kind == "name":
            if val == "i":
                return as_expr(1j)
            if val == "conj":
                self.expect("(")
                inner = self.expr()
                self.expect(")")
                return conjugate(inner)
            return var(val)
        if val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if val == "-":
            return -self.base()
        raise ParseError("unexpected token" if kind != "end" else "unexpected end of input", pos, self.text)


def parse_expr(text: str) -> RatExpr:
    """Parse ``text`` into a normalized :class:`RatExpr`."""
    p = _Parser(text)
    if p.peek()[0] == "end":
        raise ParseError("empty expression", 0, text)
    out = p.expr()
    if p.peek()[0] != "end":
        p.fail("unexpected trailing input")
    return out


__all__ = ["ParseError", "parse_expr", "ONE"]
