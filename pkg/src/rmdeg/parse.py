"""Polynomial text grammar: parsing and canonical printing.

Grammar::

    expr   := ['+'|'-'] chain (('+'|'-') chain)*
    chain  := power ('*' power)*
    power  := atom ['^' INT]
    atom   := INT ['/' INT] | NAME | '(' expr ')'

``*`` is mandatory between factors, whitespace is ignored. ``a/b`` is only
accepted between two integer literals so printed rational coefficients read
back in.
"""

from __future__ import annotations

import re

from . import _dense
from .poly import Polynomial, PolyRing


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^()/":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.p = ring.p
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def parse(self) -> dict:
        if self.peek()[0] == "end":
            self.error("empty polynomial")
        value = self.expr()
        if self.peek()[0] != "end":
            tok = self.peek()
            if tok[0] in ("int", "name", "("):
                self.error("missing '*' between factors")
            self.error(f"unexpected token {tok[1]!r}")
        return value

    def expr(self) -> dict:
        sign = 1
        if self.peek()[0] in "+-" and self.peek()[0] != "end":
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.chain()
        if sign < 0:
            acc = _dense.scale(acc, self.ring.field(-1), self.p)
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.chain()
            acc = _dense.add(acc, rhs, self.p, 1 if op == "+" else -1)
        return acc

    def chain(self) -> dict:
        acc = self.power()
        while self.peek()[0] == "*":
            self.take()
            acc = _dense.mul(acc, self.power(), self.p)
        return acc

    def power(self) -> dict:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                self.error("'^' needs a nonnegative integer exponent")
            self.take()
            if tok[1] > _dense.MAX_EXPONENT:
                raise ParseError(f"exponent overflow ({tok[1]})", tok[2], self.text)
            try:
                base = _dense.power(base, tok[1], self.ring.zero_exp(), self.p)
            except _dense.ExponentOverflow as exc:
                raise ParseError(f"exponent overflow ({exc})", tok[2], self.text) from None
        return base

    def atom(self) -> dict:
        tok = self.take()
        kind = tok[0]
        F = self.ring.field
        if kind == "int":
            value = tok[1]
            if self.peek()[0] == "/":
                self.take()
                den = self.peek()
                if den[0] != "int":
                    self.error("'/' must be followed by an integer literal")
                self.take()
                if den[1] == 0:
                    raise ParseError("division by zero", den[2], self.text)
                try:
                    c = F(f"{value}/{den[1]}")
                except ZeroDivisionError:
                    raise ParseError("denominator vanishes in this characteristic", den[2], self.text) from None
            else:
                c = F(value)
            return {self.ring.zero_exp(): c} if c else {}
        if kind == "name":
            if tok[1] not in self.ring:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2], self.text)
            e = [0] * self.ring.nvars
            e[self.ring.index(tok[1])] = 1
            return {tuple(e): F(1)}
        if kind == "(":
            inner = self.expr()
            if self.take()[0] != ")":
                self.error("expected ')'", self.tokens[self.i - 1])
            return inner
        if kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected token {tok[1]!r}", tok)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``text`` into a canonical polynomial of ``ring``.

    Raises ParseError (with ``position``) on syntax errors, unknown variables
    and exponent overflow.
    """
    terms = _Parser(text, ring).parse()
    return ring.from_dict(terms)


def _format_coeff(c, field) -> str:
    v = field.to_python(c)
    return str(v)


def format_polynomial(f: Polynomial) -> str:
    ring = f.ring
    if not f._terms:
        return "0"
    parts = []
    p = ring.p
    for c, m in f.terms:
        if p and c > p // 2:
            neg, mag = True, p - c
        else:
            neg = c < 0
            mag = -c if neg else c
        factors = []
        for name, e in zip(ring.variables, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        cs = _format_coeff(mag, ring.field)
        if factors:
            body = "*".join(factors) if cs == "1" else cs + "*" + "*".join(factors)
        else:
            body = cs
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)
