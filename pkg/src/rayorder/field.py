"""Number fields given by a monic integer polynomial, exact elements and real places.

Elements live in the power basis 1, t, ..., t^(n-1) where t is the class of x.
They are stored as an integer numerator vector plus a positive common
denominator, which keeps arithmetic in plain Python integers.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from .errors import NotIrreducible, ParseError
from .exprparse import Poly, parse_expression, parse_polynomial


def _normalize(num: Sequence[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-x for x in num]
        den = -den
    g = den
    for x in num:
        g = gcd(g, x)
        if g == 1:
            break
    if g > 1:
        num = [x // g for x in num]
        den //= g
    return tuple(num), den


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _isqrt_exact(n: int):
    from math import isqrt

    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def has_rational_root(coeffs: Sequence[int]) -> bool:
    """Monic integer polynomial, lowest degree first."""
    a0 = coeffs[0]
    if a0 == 0:
        return True
    for d in _divisors(a0):
        for r in (d, -d):
            v = 0
            for c in reversed(coeffs):
                v = v * r + c
            if v == 0:
                return True
    return False


def has_quadratic_factor(coeffs: Sequence[int]) -> bool:
    """Whether a monic quartic splits as a product of two monic integer quadratics."""
    a0, a1, a2, a3, _ = coeffs
    if a0 == 0:
        return True
    for b in _divisors(a0):
        for bb in (b, -b):
            d = a0 // bb
            # a^2 - a3*a + (a2 - bb - d) = 0 with c = a3 - a
            disc = a3 * a3 - 4 * (a2 - bb - d)
            s = _isqrt_exact(disc)
            if s is None:
                continue
            for num in (a3 + s, a3 - s):
                if num % 2:
                    continue
                a = num // 2
                c = a3 - a
                if a * d + bb * c == a1:
                    return True
    return False


def check_irreducible(coeffs: Sequence[int]) -> None:
    n = len(coeffs) - 1
    if n < 1:
        raise NotIrreducible("polynomial must have positive degree")
    if n == 1:
        return
    if n <= 3:
        if has_rational_root(coeffs):
            raise NotIrreducible("polynomial has a rational root")
        return
    if n == 4:
        if has_rational_root(coeffs) or has_quadratic_factor(coeffs):
            raise NotIrreducible("quartic polynomial factors over the integers")
        return
    raise NotIrreducible(
        f"irreducibility is only checked up to degree 4 (got {n}); "
        "pass assume_irreducible=True to accept it unchecked"
    )


# Sturm sequences and root isolation

def _peval(c: Sequence[Fraction], x: Fraction) -> Fraction:
    v = Fraction(0)
    for a in reversed(c):
        v = v * x + a
    return v


def _prem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b) and a:
        q = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, y in enumerate(b):
            a[shift + i] -= q * y
        while a and a[-1] == 0:
            a.pop()
    return a


def sturm_chain(c: Sequence[int]) -> list[list[Fraction]]:
    p0 = [Fraction(x) for x in c]
    p1 = [Fraction(i * x) for i, x in enumerate(c)][1:]
    chain = [p0, p1]
    while True:
        r = _prem(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-x for x in r])
    return chain


def _sign_changes(chain, x: Fraction) -> int:
    signs = [v for v in (_peval(p, x) for p in chain) if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u < 0) != (v < 0))


def isolate_real_roots(c: Sequence[int]) -> list[tuple[Fraction, Fraction]]:
    """Disjoint open intervals (lo, hi), each holding exactly one real root, sorted by root."""
    chain = sturm_chain(c)
    bound = Fraction(1 + max(abs(x) for x in c[:-1]))
    out = []

    def count(lo, hi):
        return _sign_changes(chain, lo) - _sign_changes(chain, hi)

    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        k = count(lo, hi)
        if k == 0:
            continue
        if k == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if _peval(c, mid) == 0:
            # only possible for rational roots, which irreducible inputs exclude
            raise NotIrreducible("polynomial has a rational root")
        stack.append((lo, mid))
        stack.append((mid, hi))
    out.sort()
    return out


class RealPlace:
    """A real embedding of the field, pinned down by an isolating interval.

    Places are numbered from 1 in decreasing order of the root, so place 1 of
    x^2 - 2 sends t to the positive square root.
    """

    def __init__(self, field: "NumberField", index: int, lo: Fraction, hi: Fraction):
        self.field = field
        self.index = index
        self.lo = lo
        self.hi = hi

    def refine(self) -> None:
        c = self.field.coeffs
        mid = (self.lo + self.hi) / 2
        slo = _peval(c, self.lo) < 0
        smid = _peval(c, mid)
        if smid == 0:
            raise NotIrreducible("polynomial has a rational root")
        if (smid < 0) == slo:
            self.lo = mid
        else:
            self.hi = mid

    def interval_value(self, x: "FieldElement") -> tuple[Fraction, Fraction]:
        lo, hi = self.lo, self.hi
        vlo = vhi = Fraction(0)
        for a in reversed(x.num):
            # multiply [vlo, vhi] by [lo, hi], then add a
            prods = (vlo * lo, vlo * hi, vhi * lo, vhi * hi)
            vlo = min(prods) + a
            vhi = max(prods) + a
        return vlo / x.den, vhi / x.den

    def sign(self, x: "FieldElement") -> int:
        if x.is_zero():
            return 0
        while True:
            lo, hi = self.interval_value(x)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            self.refine()

    def approx(self, x: "FieldElement", digits: int = 30) -> float:
        eps = Fraction(1, 10 ** digits)
        while True:
            lo, hi = self.interval_value(x)
            if hi - lo < eps * max(1, abs(lo)):
                return float((lo + hi) / 2)
            self.refine()

    def __repr__(self):
        return f"RealPlace({self.index}, [{float(self.lo):.6g}, {float(self.hi):.6g}])"


class NumberField:
    """K = Q[x]/(f) for a monic irreducible integer polynomial f."""

    def __init__(self, coeffs: Sequence[int], assume_irreducible: bool = False, var: str = "x"):
        coeffs = [int(c) for c in coeffs]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if coeffs[-1] != 1:
            raise NotIrreducible("defining polynomial must be monic")
        if not assume_irreducible:
            check_irreducible(coeffs)
        self.coeffs = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self.var = var
        n = self.degree
        # t^k reduced to the power basis, for k < 2n - 1
        red = []
        cur = [0] * n
        cur[0] = 1
        for k in range(2 * n - 1):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for i in range(n):
                    cur[i] -= top * coeffs[i]
        self._red = red
        roots = isolate_real_roots(coeffs) if n > 1 else []
        if n == 1:
            r = Fraction(-coeffs[0])
            roots = [(r - 1, r + 1)]
        roots = roots[::-1]
        self.real_places = [RealPlace(self, i + 1, lo, hi) for i, (lo, hi) in enumerate(roots)]

    @classmethod
    def from_string(cls, text: str, assume_irreducible: bool = False) -> "NumberField":
        p = parse_polynomial(text, variables=("x",))
        if p.degree < 1:
            raise ParseError("defining polynomial must have positive degree", text, 0)
        if any(c.denominator != 1 for c in p.c):
            raise ParseError("defining polynomial must have integer coefficients", text, 0)
        return cls([int(c) for c in p.c], assume_irreducible=assume_irreducible)

    def polynomial_string(self) -> str:
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(c) == 1:
                term = mono
            elif mono:
                term = f"{abs(c)}*{mono}"
            else:
                term = str(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append((sign, term))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            s += f" {sign} {term}"
        return s

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("NumberField", self.coeffs))

    def __repr__(self):
        return f"NumberField({self.polynomial_string()!r})"

    # element construction

    def element(self, coords: Iterable, den: int = 1) -> "FieldElement":
        coords = list(coords)
        if len(coords) != self.degree:
            raise ValueError(f"expected {self.degree} coordinates, got {len(coords)}")
        if all(isinstance(c, int) for c in coords):
            return FieldElement(self, coords, den)
        fr = [Fraction(c) / den for c in coords]
        d = 1
        for q in fr:
            d = d * q.denominator // gcd(d, q.denominator)
        return FieldElement(self, [int(q * d) for q in fr], d)

    def __call__(self, x) -> "FieldElement":
        if isinstance(x, FieldElement):
            if x.field != self:
                raise ValueError("element of a different field")
            return x
        if isinstance(x, str):
            return self.parse_element(x)
        if isinstance(x, (int, Fraction)):
            q = Fraction(x)
            return FieldElement(self, [q.numerator] + [0] * (self.degree - 1), q.denominator)
        return self.element(x)

    @cached_property
    def gen(self) -> "FieldElement":
        if self.degree == 1:
            return self(-self.coeffs[0])
        return FieldElement(self, [0, 1] + [0] * (self.degree - 2), 1)

    @cached_property
    def one(self) -> "FieldElement":
        return self(1)

    @cached_property
    def zero(self) -> "FieldElement":
        return self(0)

    def parse_element(self, text: str, names=("a",)) -> "FieldElement":
        def var(name):
            if name not in names:
                raise KeyError(name)
            return self.gen

        return parse_expression(text, lambda q: self(q), var)

    def place(self, index: int) -> RealPlace:
        if not 1 <= index <= len(self.real_places):
            raise IndexError(f"field has {len(self.real_places)} real places, not {index}")
        return self.real_places[index - 1]

    @property
    def signature_real(self) -> int:
        return len(self.real_places)

    def poly_discriminant(self) -> int:
        """Discriminant of the defining polynomial (= disc of Z[t])."""
        from .zmodule import det_int

        basis = [self.element([1 if i == j else 0 for i in range(self.degree)]) for j in range(self.degree)]
        return det_int([[(x * y).trace() for y in basis] for x in basis])


class FieldElement:
    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: NumberField, num: Sequence[int], den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        self.field = field
        self.num, self.den = _normalize(num, den)
        self._hash = None

    # representation

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def is_integral_coords(self) -> bool:
        return self.den == 1

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coords):
            if c == 0:
                continue
            mono = "" if k == 0 else ("a" if k == 1 else f"a^{k}")
            a = abs(c)
            if mono and a == 1:
                term = mono
            elif mono:
                term = f"{a}*{mono}"
            else:
                term = str(a)
            parts.append(("-" if c < 0 else "+", term))
        if not parts:
            return "0"
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            s += f" {sign} {term}"
        return s

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # arithmetic

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return FieldElement(self.field, [x + y for x, y in zip(self.num, o.num)], self.den)
        return FieldElement(
            self.field, [x * o.den + y * self.den for x, y in zip(self.num, o.num)], self.den * o.den
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-x for x in self.num], self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        K = self.field
        n = K.degree
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(self.num):
            if x:
                for j, y in enumerate(o.num):
                    if y:
                        prod[i + j] += x * y
        out = prod[:n]
        red = K._red
        for k in range(n, 2 * n - 1):
            c = prod[k]
            if c:
                r = red[k]
                for i in range(n):
                    out[i] += c * r[i]
        return FieldElement(K, out, self.den * o.den)

    __rmul__ = __mul__

    def mult_matrix(self) -> list[list[Fraction]]:
        """Row i holds the coordinates of self * t^i."""
        K = self.field
        rows = []
        cur = self
        for _ in range(K.degree):
            rows.append(list(cur.coords))
            cur = cur * K.gen
        return rows

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        K = self.field
        n = K.degree
        if self.is_rational():
            q = Fraction(self.den, self.num[0])
            return K(q)
        # solve y * M = e_0 where M rows are self*t^i; y are coords of the inverse
        M = self.mult_matrix()
        # transpose system: sum_i y_i M[i][j] = delta_{j0}
        A = [[M[i][j] for i in range(n)] + [Fraction(1 if j == 0 else 0)] for j in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if A[r][col] != 0)
            A[col], A[piv] = A[piv], A[col]
            pv = A[col][col]
            A[col] = [v / pv for v in A[col]]
            for r in range(n):
                if r != col and A[r][col] != 0:
                    f = A[r][col]
                    A[r] = [a - f * b for a, b in zip(A[r], A[col])]
        return K.element([A[j][n] for j in range(n)])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self
        if e < 0:
            base = self.inverse()
            e = -e
        out = self.field.one
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def norm(self) -> Fraction:
        from .zmodule import det_fraction

        return det_fraction(self.mult_matrix())

    def trace(self) -> Fraction:
        M = self.mult_matrix()
        return sum((M[i][i] for i in range(len(M))), Fraction(0))

    def sign_at(self, place: RealPlace | int) -> int:
        if isinstance(place, int):
            place = self.field.place(place)
        return place.sign(self)

    def approx(self, place: RealPlace | int) -> float:
        if isinstance(place, int):
            place = self.field.place(place)
        return place.approx(self)


def sign_at(x: FieldElement, place: RealPlace | int) -> int:
    return x.sign_at(place)


def field_from_string(text: str, assume_irreducible: bool = False) -> NumberField:
    return NumberField.from_string(text, assume_irreducible=assume_irreducible)


__all__ = [
    "NumberField",
    "FieldElement",
    "RealPlace",
    "Poly",
    "sign_at",
    "field_from_string",
    "check_irreducible",
    "isolate_real_roots",
]
