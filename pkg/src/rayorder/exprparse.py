"""Small recursive-descent parser for arithmetic expressions in one variable.

The grammar is the usual one::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor | factor)*     # juxtaposition multiplies
    factor := ('+' | '-') factor | power
    power  := atom ('^' integer)?
    atom   := integer | name | '(' expr ')'

Values are built through a caller supplied ``const`` / ``var`` pair, so the
same parser produces polynomials and number field elements.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Callable

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def tokenize(text: str) -> list[tuple[str, Any, int]]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            while text[pos].isspace():
                pos += 1
            raise ParseError("unexpected character", text, pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("num", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", None, n))
    return out


class _Parser:
    def __init__(self, text, const, var):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.const = const
        self.var = var

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        val = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return val

    def expr(self):
        val = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.factor()
        while True:
            kind, tv, _ = self.peek()
            if kind == "op" and tv in "*/":
                tok = self.take()
                rhs = self.factor()
                if tv == "*":
                    val = val * rhs
                else:
                    try:
                        val = val / rhs
                    except (ZeroDivisionError, TypeError, ValueError) as exc:
                        self.fail(f"bad division ({exc})", tok)
            elif kind in ("num", "name") or (kind == "op" and tv == "("):
                val = val * self.factor()
            else:
                return val

    def factor(self):
        kind, tv, _ = self.peek()
        if kind == "op" and tv in "+-":
            self.take()
            val = self.factor()
            return -val if tv == "-" else val
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            neg = False
            if self.peek()[:2] == ("op", "-"):
                self.take()
                neg = True
            tok = self.take()
            if tok[0] != "num":
                self.fail("exponent must be an integer literal", tok)
            e = -tok[1] if neg else tok[1]
            try:
                return base ** e
            except (ZeroDivisionError, TypeError, ValueError) as exc:
                self.fail(f"bad power ({exc})", tok)
        return base

    def atom(self):
        tok = self.take()
        kind, tv, _ = tok
        if kind == "num":
            return self.const(Fraction(tv))
        if kind == "name":
            try:
                return self.var(tv)
            except KeyError:
                self.fail(f"unknown name {tv!r}", tok)
        if kind == "op" and tv == "(":
            val = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.fail("expected ')'")
            self.take()
            return val
        self.fail("unexpected token", tok)


def parse_expression(text: str, const: Callable, var: Callable):
    return _Parser(text, const, var).parse()


class Poly:
    """Dense univariate polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @property
    def degree(self):
        return len(self.c) - 1

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.c), len(other.c))
        a = self.c + (Fraction(0),) * (n - len(self.c))
        b = other.c + (Fraction(0),) * (n - len(other.c))
        return Poly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-x for x in self.c])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.c or not other.c:
            return Poly([])
        out = [Fraction(0)] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(other.c):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_poly(other)
        if other.degree != 0:
            raise ValueError("division by a non-constant polynomial")
        return Poly([x / other.c[0] for x in self.c])

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly([1])
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, Poly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"Poly({[str(x) for x in self.c]})"


def _as_poly(x):
    if isinstance(x, Poly):
        return x
    return Poly([x])


def parse_polynomial(text: str, variables=("x",)) -> Poly:
    def var(name):
        if name not in variables:
            raise KeyError(name)
        return Poly([0, 1])

    return parse_expression(text, lambda q: Poly([q]), var)
