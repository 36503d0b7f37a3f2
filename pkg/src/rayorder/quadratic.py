"""Quadratic fields and their orders: units, ideal reduction, principal ideals, ring class groups.

An invertible ideal of the order of discriminant D is, up to a rational
factor, J(a, b) = aZ + ((-b + sqrt D)/2)Z with 4a | b^2 - D and
gcd(a, b, c) = 1 where c = (b^2 - D)/4a. Reduction moves J(a, b) to
lambda*J(a, b) = J(|c|, b') with lambda = (-b - sqrt D)/2a; the reduced ideals
of a class form a single orbit (imaginary case: one ideal; real case: a cycle).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, isqrt

from sympy import factorint

from .errors import DiscTooLarge, NotInvertible, PreconditionError
from .field import FieldElement, NumberField
from .ideals import FracIdeal, Order, lattice_of
from .zmodule import Cokernel, FinAbGroup, abelian_group_from_elements

DEFAULT_DISC_BOUND = 10 ** 6


def _squarefree_part(n: int) -> tuple[int, int]:
    """n = t^2 * d with d squarefree; returns (d, t)."""
    sign = -1 if n < 0 else 1
    d, t = sign, 1
    for p, e in factorint(abs(n)).items():
        t *= p ** (e // 2)
        if e % 2:
            d *= p
    return d, t


def kronecker(D: int, p: int) -> int:
    """Kronecker symbol (D/p) for a prime p."""
    if p == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 in (1, 7) else -1
    r = pow(D % p, (p - 1) // 2, p)
    return 0 if r == 0 else (1 if r == 1 else -1)


class QuadraticField:
    """Arithmetic data of a quadratic field given as Q[x]/(x^2 + p x + q)."""

    def __init__(self, field: NumberField):
        if field.degree != 2:
            raise PreconditionError("field is not quadratic")
        self.field = field
        q, p, _ = field.coeffs
        self.p, self.q = p, q
        disc = p * p - 4 * q
        d0, t = _squarefree_part(disc)
        self.d0 = d0
        self.disc_fund = d0 if d0 % 4 == 1 else 4 * d0
        # disc = s^2 * Delta
        s2 = disc // self.disc_fund
        s = isqrt(s2)
        assert s * s == s2
        self.s = s
        self.is_real = d0 > 0

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and self.field == other.field

    def __hash__(self):
        return hash(("QuadraticField", self.field))

    def sqrt_disc(self, D: int) -> FieldElement:
        """The element sqrt(D) for D = f^2 * Delta, positive at real place 1."""
        f2 = D // self.disc_fund
        f = isqrt(f2)
        if f * f != f2 or f2 * self.disc_fund != D:
            raise PreconditionError(f"{D} is not a square times the field discriminant")
        theta = self.field.gen
        return (2 * theta + self.p) * Fraction(f, self.s)

    def omega(self, D: int) -> FieldElement:
        return (self.sqrt_disc(D) + D) * Fraction(1, 2)

    def order(self, conductor: int = 1) -> Order:
        D = conductor * conductor * self.disc_fund
        return Order(self.field, lattice_of([self.field.one, self.omega(D)]), check=False)

    @cached_property
    def maximal_order(self) -> Order:
        return self.order(1)

    def order_discriminant(self, order: Order) -> int:
        return order.discriminant()

    def order_conductor(self, order: Order) -> int:
        D = order.discriminant()
        f2 = D // self.disc_fund
        f = isqrt(f2)
        if f * f != f2:
            raise PreconditionError("not an order of this field")
        return f

    def to_sqrt_coords(self, x: FieldElement, D: int) -> tuple[Fraction, Fraction]:
        """(s, t) with x = s + t*sqrt(D)."""
        c0, c1 = x.coords
        f = isqrt(D // self.disc_fund)
        return c0 - c1 * Fraction(self.p, 2), c1 * Fraction(self.s, 2 * f)

    def conj(self, x: FieldElement) -> FieldElement:
        return x.trace() - x

    # units

    @cached_property
    def fundamental_unit(self) -> FieldElement:
        """The fundamental unit of the maximal order, normalized to be > 1 at place 1."""
        if not self.is_real:
            raise PreconditionError("imaginary quadratic fields have no fundamental unit")
        Delta = self.disc_fund
        w = self.omega(Delta)
        r = isqrt(Delta)
        P, Q = Delta, 2
        p_prev, p_cur = 0, 1
        q_prev, q_cur = 1, 0
        while True:
            if Q > 0:
                a = (P + r) // Q
            else:
                a = (P + r + 1) // Q
            p_prev, p_cur = p_cur, a * p_cur + p_prev
            q_prev, q_cur = q_cur, a * q_cur + q_prev
            eta = p_cur - q_cur * w
            if abs(eta.norm()) == 1 and eta != 1 and eta != -1:
                break
            P = a * Q - P
            Q = (Delta - P * P) // Q
        cands = [eta, -eta, eta.inverse(), -eta.inverse()]
        return next(u for u in cands if u.sign_at(1) > 0 and (u - 1).sign_at(1) > 0)

    @cached_property
    def torsion(self) -> tuple[FieldElement, int]:
        """Generator and order of the roots of unity in the field."""
        K = self.field
        if self.is_real or self.disc_fund not in (-3, -4):
            return K(-1), 2
        g = self.sqrt_disc(self.disc_fund)
        if self.disc_fund == -4:
            return g * Fraction(1, 2), 4
        return (g + 1) * Fraction(1, 2), 6

    def unit_index_exponent(self, order: Order) -> int:
        """Smallest k > 0 with eps^k in the order (real fields)."""
        eps = self.fundamental_unit
        k = 1
        e = eps
        while not order.contains(e):
            e = e * eps
            k += 1
        return k

    def order_unit_group(self, order: Order) -> dict:
        """Torsion generator and order, plus the fundamental unit of the order (real case)."""
        if self.is_real:
            k = self.unit_index_exponent(order)
            return {"torsion": (self.field(-1), 2), "fundamental": self.fundamental_unit ** k, "exponent": k}
        zeta, w = self.torsion
        wo = next(d for d in range(w, 0, -1) if w % d == 0 and order.contains(zeta ** (w // d)))
        return {"torsion": (zeta ** (w // wo), wo), "fundamental": None, "exponent": w // wo}

    # ideals of an order as (a, b) pairs

    def ideal_ab(self, D: int, a: int, b: int) -> Order | FracIdeal:
        g = self.sqrt_disc(D)
        return lattice_of([self.field(a), (g - b) * Fraction(1, 2)])

    def decompose_ideal(self, I: FracIdeal) -> tuple[Fraction, int, int]:
        """(k, a, b) with I = k * J(a, b), J(a, b) primitive in the sense above."""
        O = I.order
        D = O.discriminant()
        rows = []
        for x in I.basis:
            s, t = self.to_sqrt_coords(x, D)
            v = 2 * t
            u = s - v * Fraction(D, 2)
            rows.append((u, v))
        (x0, y0), (x1, y1) = rows
        k = _frac_gcd(y0, y1)
        det = abs(x0 * y1 - x1 * y0)
        a = det / (k * k)
        if a.denominator != 1:
            raise NotInvertible("ideal is not of the expected shape")
        a = int(a)
        from .zmodule import xgcd

        # coefficients with s*y0 + t*y1 = k, done over a common denominator
        L = _lcm_den([y0, y1, k])
        g, s_, t_ = xgcd(int(y0 * L), int(y1 * L))
        assert Fraction(g, L) == k
        xk = (s_ * x0 + t_ * x1) / k
        if xk.denominator != 1:
            raise NotInvertible("ideal is not of the expected shape")
        b = (-2 * int(xk) - D) % (2 * a)
        if b > a:
            b -= 2 * a
        return k, a, b


def _frac_gcd(x: Fraction, y: Fraction) -> Fraction:
    x, y = Fraction(x), Fraction(y)
    L = _lcm_den([x, y])
    return Fraction(gcd(int(x * L), int(y * L)), L)


def _lcm_den(vals) -> int:
    L = 1
    for v in vals:
        d = Fraction(v).denominator
        L = L * d // gcd(L, d)
    return L


# reduction

class _Reducer:
    """Reduction of ideals J(a, b) of discriminant D."""

    def __init__(self, Q: QuadraticField, D: int):
        self.Q = Q
        self.D = D
        self.real = D > 0
        self.s = isqrt(D) if D > 0 else 0
        self.g = Q.sqrt_disc(D)

    def c_of(self, a, b):
        return (b * b - self.D) // (4 * a)

    def normalize(self, a, b):
        if self.real and a <= self.s:
            # largest b' = b mod 2a with b' < sqrt D
            return self.s - ((self.s - b) % (2 * a))
        r = b % (2 * a)
        return r - 2 * a if r > a else r

    def is_reduced(self, a, b):
        D = self.D
        if self.real:
            if b <= 0 or b * b >= D:
                return False
            lo = 2 * a + b
            if lo * lo <= D:
                return False
            hi = 2 * a - b
            return hi < 0 or hi * hi < D
        c = self.c_of(a, b)
        if not -a < b <= a:
            return False
        return a < c or (a == c and b >= 0)

    def rho(self, a, b):
        c = self.c_of(a, b)
        a2 = abs(c)
        b2 = self.normalize(a2, -b)
        lam = (self.g + b) * Fraction(-1, 2 * a)
        return a2, b2, lam

    def reduce(self, a, b):
        """Reduced (a', b') and lambda with J(a', b') = lambda * J(a, b)."""
        lam = self.Q.field.one
        b = self.normalize(a, b)
        for _ in range(10 ** 6):
            if self.is_reduced(a, b):
                return a, b, lam
            a, b, l2 = self.rho(a, b)
            lam = lam * l2
        raise ArithmeticError("reduction did not terminate")

    def cycle(self, a, b):
        """The reduced ideals of the class, with the multiplier from the first to each."""
        out = [(a, b, self.Q.field.one)]
        seen = {(a, b)}
        lam = self.Q.field.one
        if not self.real:
            return out
        while True:
            a, b, l2 = self.rho(a, b)
            lam = lam * l2
            if (a, b) in seen:
                return out
            seen.add((a, b))
            out.append((a, b, lam))


@lru_cache(maxsize=None)
def _reducer(field: NumberField, D: int) -> _Reducer:
    return _Reducer(QuadraticField(field), D)


def reduced_ideals(Q: QuadraticField, D: int) -> list[tuple[int, int]]:
    R = _reducer(Q.field, D)
    out = []
    if D < 0:
        amax = isqrt(-D // 3) + 1
        for a in range(1, amax + 1):
            for b in range(-a + 1, a + 1):
                if (b * b - D) % (4 * a):
                    continue
                c = (b * b - D) // (4 * a)
                if gcd(gcd(a, b), c) != 1:
                    continue
                if R.is_reduced(a, b):
                    out.append((a, b))
    else:
        s = isqrt(D)
        for a in range(1, s + 1):
            for b in range(max(1, s - 2 * a), s + 1):
                if (b * b - D) % (4 * a):
                    continue
                c = (b * b - D) // (4 * a)
                if gcd(gcd(a, b), c) != 1:
                    continue
                if R.is_reduced(a, b):
                    out.append((a, b))
    return out


def _check_invertible(a, b, D):
    c = (b * b - D) // (4 * a)
    if gcd(gcd(a, b), c) != 1:
        raise NotInvertible("ideal is not invertible in its order")


def is_principal(I: FracIdeal) -> FieldElement | None:
    """A generator gamma with I = gamma * O, or None when I is not principal."""
    O = I.order
    Q = QuadraticField(O.field)
    D = O.discriminant()
    k, a, b = Q.decompose_ideal(I)
    _check_invertible(a, b, D)
    R = _reducer(O.field, D)
    a, b, lam = R.reduce(a, b)
    for a2, b2, l2 in R.cycle(a, b):
        if a2 == 1:
            gamma = lam * l2
            gen = gamma.inverse() * k
            if FracIdeal.generated_by(O, [gen]) != I:
                raise ArithmeticError("generator check failed")
            return gen
    return None


class RingClassGroup:
    """Cl(O) for a quadratic order, with a discrete logarithm on invertible ideals."""

    def __init__(self, order: Order, bound: int = DEFAULT_DISC_BOUND):
        self.order = order
        self.Q = QuadraticField(order.field)
        self.D = D = order.discriminant()
        if abs(D) > bound:
            raise DiscTooLarge(f"|disc| = {abs(D)} exceeds the bound {bound}")
        self.R = _reducer(order.field, D)
        self._canon = {}
        classes = []
        for a, b in reduced_ideals(self.Q, D):
            if (a, b) in self._canon:
                continue
            cyc = [(x, y) for x, y, _ in self.R.cycle(a, b)]
            key = min(cyc)
            for c in cyc:
                self._canon[c] = key
            classes.append(key)
        self.classes = sorted(classes)
        self.one = self._canon[self.R.reduce(1, D % 2)[:2]]
        gens, rels, table = abelian_group_from_elements(self.classes, self._mul, self.one)
        self._gens = gens
        self._table = table
        self.cokernel = Cokernel(rels, len(gens)) if gens else None
        self.group = self.cokernel.group if gens else FinAbGroup(())

    @property
    def class_number(self) -> int:
        return len(self.classes)

    def ideal_of(self, key) -> FracIdeal:
        a, b = key
        return FracIdeal(self.order, self.Q.ideal_ab(self.D, a, b), check=False)

    def key_of(self, I: FracIdeal):
        _, a, b = self.Q.decompose_ideal(I)
        _check_invertible(a, b, self.D)
        a, b, _ = self.R.reduce(a, b)
        return self._canon[(a, b)]

    def _mul(self, k1, k2):
        return self.key_of(self.ideal_of(k1) * self.ideal_of(k2))

    def dlog(self, I: FracIdeal) -> tuple[int, ...]:
        if self.cokernel is None:
            return ()
        return self.cokernel.project(self._table[self.key_of(I)])

    def representatives(self) -> list[FracIdeal]:
        return [self.ideal_of(k) for k in self.classes]


@lru_cache(maxsize=256)
def _ring_class_group_cached(order: Order, bound: int) -> RingClassGroup:
    return RingClassGroup(order, bound)


def ring_class_group(order: Order, bound: int = DEFAULT_DISC_BOUND) -> RingClassGroup:
    return _ring_class_group_cached(order, bound)


def class_number_formula(Q: QuadraticField, f: int) -> int:
    """h(O_f) from h_K, the conductor and the unit index, as an independent check."""
    hK = ring_class_group(Q.maximal_order).class_number
    if f == 1:
        return hK
    num = hK * f
    den = 1
    for p in factorint(f):
        num *= p - kronecker(Q.disc_fund, p)
        den *= p
    O = Q.order(f)
    if Q.is_real:
        idx = Q.unit_index_exponent(O)
    else:
        idx = Q.torsion[1] // Q.order_unit_group(O)["torsion"][1]
    return num // (den * idx)


__all__ = [
    "QuadraticField",
    "RingClassGroup",
    "ring_class_group",
    "is_principal",
    "reduced_ideals",
    "class_number_formula",
    "kronecker",
]
