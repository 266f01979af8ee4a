"""Recursive-descent parser for rational-function expressions in ``z``.

Grammar (whitespace insignificant)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' INTEGER)?
    atom   := INTEGER | 'z' | 'i' | '(' expr ')'

Implicit multiplication is rejected.
"""

from __future__ import annotations

import re

from .poly import Poly
from .rational import RatFun
from .scalar import QI

__all__ = ["ParseError", "parse_expression"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([zi])|(\*\*|[-+*/^()])|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


def _tokenize(text: str):
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        num, name, op, bad = m.groups()
        start = m.start(m.lastindex)
        if bad is not None:
            if bad == ".":
                raise ParseError("decimal literals are not supported (use a/b)", start, text)
            raise ParseError(f"unexpected character {bad!r}", start, text)
        if op == "**":
            op = "^"
        if num is not None:
            toks.append(("num", int(num), start))
        elif name is not None:
            toks.append(("name", name, start))
        else:
            toks.append(("op", op, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def parse(self) -> RatFun:
        if self.peek()[0] == "end":
            self.error("empty expression")
        f = self.expr()
        if self.peek()[0] != "end":
            tok = self.peek()
            if tok[0] in ("num", "name") or tok[1] == "(":
                self.error("implicit multiplication is not allowed (use '*')")
            self.error(f"unexpected token {tok[1]!r}")
        return f

    def expr(self) -> RatFun:
        f = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> RatFun:
        f = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op_tok = self.take()
            g = self.unary()
            if op_tok[1] == "*":
                f = f * g
            else:
                if not g.num:
                    self.error("division by the zero function", op_tok)
                f = f / g
        return f

    def unary(self) -> RatFun:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            f = self.unary()
            return -f if tok[1] == "-" else f
        return self.power()

    def power(self) -> RatFun:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "-":
                self.error("negative exponents are not allowed")
            if tok[0] != "num":
                self.error("non-integer exponent: exponent must be a nonnegative integer literal")
            self.take()
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "^":
                self.error("chained exponents are ambiguous; add parentheses", nxt)
            n = tok[1]
            if n == 0:
                return RatFun.const(1)
            return base ** n
        return base

    def atom(self) -> RatFun:
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return RatFun.const(val)
        if kind == "name":
            if val == "z":
                return RatFun.poly(Poly([0, 1]))
            return RatFun.const(QI(0, 1))
        if kind == "op" and val == "(":
            f = self.expr()
            if self.peek()[1] != ")" or self.peek()[0] != "op":
                self.error("expected ')'")
            self.take()
            return f
        if kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected token {val!r}", tok)


def parse_expression(text: str) -> RatFun:
    """Parse ``text`` into a canonical :class:`RatFun`.

    Raises :class:`ParseError` (carrying ``position``) on malformed input,
    division by zero, or a bad exponent.
    """
    return _Parser(text).parse()
