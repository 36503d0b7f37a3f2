"""Orders and fractional ideals of a number field, represented as lattices.

All containment and equality questions reduce to comparisons of Hermite
forms. Colon ideals are intersections of scaled lattices; prime ideals over a
rational prime p come from linear algebra in the F_p-algebra O/pO.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from sympy import factorint

from .errors import (
    NotAnIdeal,
    NotAnOrder,
    NotCoprime,
    NotIntegral,
    NotInvertible,
    NotSuborder,
    ResidueRingTooLarge,
)
from .field import FieldElement, NumberField
from .zmodule import HNFLattice, hnf, lcm, split_sum


# lattice helpers

def lattice_of(elements: Iterable[FieldElement], n: int | None = None) -> HNFLattice:
    elements = list(elements)
    d = 1
    for x in elements:
        d = lcm(d, x.den)
    rows = [[c * (d // x.den) for c in x.num] for x in elements]
    return HNFLattice(d, rows)


def _span(K: NumberField, elements: list[FieldElement]) -> list[FieldElement]:
    """A Z-basis of the span of the elements, of any rank."""
    d = 1
    for x in elements:
        d = lcm(d, x.den)
    rows = hnf([[c * (d // x.den) for c in x.num] for x in elements], K.degree)
    return [FieldElement(K, r, d) for r in rows]


def lattice_basis(K: NumberField, L: HNFLattice) -> list[FieldElement]:
    return [FieldElement(K, r, L.den) for r in L.mat]


def _int_mult_matrix(num: Sequence[int], K: NumberField) -> list[list[int]]:
    # rows: coordinates of y * t^i for the integral vector y = num
    rows = []
    cur = FieldElement(K, num, 1)
    for _ in range(K.degree):
        rows.append(list(cur.num))
        cur = cur * K.gen
    return rows


def _rows_times(mat, M, n):
    return [[sum(r[i] * M[i][j] for i in range(n) if r[i]) for j in range(n)] for r in mat]


def lattice_times(L: HNFLattice, x: FieldElement) -> HNFLattice:
    """The lattice x * L."""
    M = _int_mult_matrix(x.num, x.field)
    return HNFLattice(L.den * x.den, _rows_times(L.mat, M, L.n))


def lattice_product(K: NumberField, A: HNFLattice, B: HNFLattice) -> HNFLattice:
    rows = []
    for rb in B.mat:
        rows.extend(_rows_times(A.mat, _int_mult_matrix(rb, K), A.n))
    return HNFLattice(A.den * B.den, rows)


def lattice_colon(K: NumberField, A: HNFLattice, B: HNFLattice) -> HNFLattice:
    """{x in K : x * B subset of A}."""
    out = None
    for b in lattice_basis(K, B):
        piece = lattice_times(A, b.inverse())
        out = piece if out is None else out.intersect(piece)
    return out


class Order:
    """A subring of O_K of full rank, stored as a lattice in the power basis."""

    def __init__(self, field: NumberField, lattice: HNFLattice, check: bool = True):
        self.field = field
        self.lattice = lattice
        if check:
            if not lattice.contains_vector(field.one.coords):
                raise NotAnOrder("lattice does not contain 1")
            basis = self.basis
            for i, x in enumerate(basis):
                for y in basis[i:]:
                    if not lattice.contains_int_vector((x * y).num, (x * y).den):
                        raise NotAnOrder("lattice is not closed under multiplication")

    @classmethod
    def from_generators(cls, field: NumberField, gens: Iterable[FieldElement], check: bool = True) -> "Order":
        """Order whose Z-module basis is spanned by the given elements."""
        return cls(field, lattice_of(gens), check=check)

    @classmethod
    def ring_generated_by(cls, field: NumberField, gens: Iterable[FieldElement]) -> "Order":
        """Smallest order containing the given integral elements."""
        gens = list(gens)
        elems = _span(field, [field.one] + gens)
        # monomials of degree < n span K when the generators do
        for _ in range(field.degree - 1):
            elems = _span(field, elems + [x * g for x in elems for g in gens])
        L = lattice_of(elems)
        while True:
            basis = lattice_basis(field, L)
            prods = [x * y for i, x in enumerate(basis) for y in basis[i:]]
            L2 = lattice_of(basis + prods)
            if L2 == L:
                return cls(field, L, check=False)
            if L2.den > 10 ** 6 * max(1, L.den):
                raise NotAnOrder("generators are not integral")
            L = L2

    @classmethod
    def equation_order(cls, field: NumberField) -> "Order":
        return cls(field, HNFLattice.standard(field.degree), check=False)

    @cached_property
    def basis(self) -> list[FieldElement]:
        return lattice_basis(self.field, self.lattice)

    @property
    def degree(self) -> int:
        return self.field.degree

    @cached_property
    def _inv_basis(self) -> list[list[Fraction]]:
        # inverse of the basis matrix: coords in the order basis = v * inv
        n = self.degree
        A = [[Fraction(x, self.lattice.den) for x in r] + [Fraction(int(i == j)) for j in range(n)]
             for i, r in enumerate(self.lattice.mat)]
        for col in range(n):
            piv = next(r for r in range(col, n) if A[r][col] != 0)
            A[col], A[piv] = A[piv], A[col]
            pv = A[col][col]
            A[col] = [v / pv for v in A[col]]
            for r in range(n):
                if r != col and A[r][col]:
                    f = A[r][col]
                    A[r] = [a - f * b for a, b in zip(A[r], A[col])]
        return [row[n:] for row in A]

    def coords(self, x: FieldElement) -> list[Fraction]:
        inv = self._inv_basis
        n = self.degree
        c = x.coords
        return [sum((c[i] * inv[i][j] for i in range(n) if c[i]), Fraction(0)) for j in range(n)]

    def int_coords(self, x: FieldElement) -> list[int]:
        c = self.coords(x)
        if any(v.denominator != 1 for v in c):
            raise NotIntegral(f"{x} is not in the order")
        return [int(v) for v in c]

    def from_coords(self, c: Sequence) -> FieldElement:
        out = self.field.zero
        for ci, b in zip(c, self.basis):
            if ci:
                out = out + b * ci
        return out

    def contains(self, x: FieldElement) -> bool:
        return self.lattice.contains_int_vector(x.num, x.den)

    def __contains__(self, x):
        return self.contains(self.field(x))

    @cached_property
    def structure_constants(self) -> list[list[list[int]]]:
        """table[i][j] = coordinates of b_i * b_j in the order basis."""
        B = self.basis
        n = self.degree
        t = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                t[i][j] = t[j][i] = self.int_coords(B[i] * B[j])
        return t

    def mul_coords(self, u: Sequence[int], v: Sequence[int]) -> list[int]:
        n = self.degree
        T = self.structure_constants
        out = [0] * n
        for i in range(n):
            if u[i]:
                for j in range(n):
                    if v[j]:
                        c = u[i] * v[j]
                        row = T[i][j]
                        for k in range(n):
                            out[k] += c * row[k]
        return out

    def __eq__(self, other):
        return isinstance(other, Order) and self.field == other.field and self.lattice == other.lattice

    def __hash__(self):
        return hash(("Order", self.lattice))

    def __le__(self, other: "Order") -> bool:
        return other.lattice.contains(self.lattice)

    def __repr__(self):
        return f"Order({', '.join(str(b) for b in self.basis)})"

    def discriminant(self) -> int:
        from .zmodule import det_fraction

        B = self.basis
        d = det_fraction([[(x * y).trace() for y in B] for x in B])
        return int(d)

    def index_in(self, sup: "Order") -> int:
        return int(self.lattice.index_in(sup.lattice))

    @cached_property
    def unit_ideal(self) -> "FracIdeal":
        return FracIdeal(self, self.lattice, check=False)

    def ideal(self, *gens) -> "FracIdeal":
        return FracIdeal.generated_by(self, [self.field(g) for g in gens])


class FracIdeal:
    """A fractional ideal of a fixed order: a full-rank lattice stable under that order."""

    def __init__(self, order: Order, lattice: HNFLattice, check: bool = True):
        self.order = order
        self.lattice = lattice
        if check:
            K = order.field
            for b in order.basis:
                for x in lattice_basis(K, lattice):
                    y = b * x
                    if not lattice.contains_int_vector(y.num, y.den):
                        raise NotAnIdeal("lattice is not stable under the order")

    @classmethod
    def generated_by(cls, order: Order, gens: Iterable[FieldElement]) -> "FracIdeal":
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            raise NotAnIdeal("the zero ideal is not a fractional ideal")
        elems = [g * b for g in gens for b in order.basis]
        return cls(order, lattice_of(elems), check=False)

    @classmethod
    def from_lattice_gens(cls, order: Order, gens: Iterable[FieldElement], check: bool = True) -> "FracIdeal":
        return cls(order, lattice_of(gens), check=check)

    @property
    def field(self) -> NumberField:
        return self.order.field

    @cached_property
    def basis(self) -> list[FieldElement]:
        return lattice_basis(self.field, self.lattice)

    def __eq__(self, other):
        return isinstance(other, FracIdeal) and self.order == other.order and self.lattice == other.lattice

    def __hash__(self):
        return hash(("FracIdeal", self.lattice))

    def __repr__(self):
        return f"FracIdeal({self.lattice.to_text()!r})"

    def _same(self, other: "FracIdeal"):
        if self.order != other.order:
            raise NotAnIdeal("ideals over different orders")

    def __add__(self, other: "FracIdeal") -> "FracIdeal":
        self._same(other)
        return FracIdeal(self.order, self.lattice + other.lattice, check=False)

    def __mul__(self, other) -> "FracIdeal":
        if isinstance(other, FracIdeal):
            self._same(other)
            return FracIdeal(self.order, lattice_product(self.field, self.lattice, other.lattice), check=False)
        x = self.field(other)
        if x.is_zero():
            raise NotAnIdeal("multiplication by zero")
        return FracIdeal(self.order, lattice_times(self.lattice, x), check=False)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "FracIdeal":
        if e < 0:
            return self.inverse() ** (-e)
        out = self.order.unit_ideal
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __and__(self, other: "FracIdeal") -> "FracIdeal":
        self._same(other)
        return FracIdeal(self.order, self.lattice.intersect(other.lattice), check=False)

    intersect = __and__

    def colon(self, other: "FracIdeal") -> "FracIdeal":
        self._same(other)
        return FracIdeal(self.order, lattice_colon(self.field, self.lattice, other.lattice), check=False)

    def __le__(self, other: "FracIdeal") -> bool:
        return other.lattice.contains(self.lattice)

    def __ge__(self, other: "FracIdeal") -> bool:
        return self.lattice.contains(other.lattice)

    def contains(self, x: FieldElement) -> bool:
        return self.lattice.contains_int_vector(x.num, x.den)

    def is_integral(self) -> bool:
        return self.order.lattice.contains(self.lattice)

    def is_invertible(self) -> bool:
        return self * self.order.unit_ideal.colon(self) == self.order.unit_ideal

    def inverse(self) -> "FracIdeal":
        inv = self.order.unit_ideal.colon(self)
        if self * inv != self.order.unit_ideal:
            raise NotInvertible("ideal is not invertible in its order")
        return inv

    def norm(self) -> Fraction:
        return self.lattice.index_in(self.order.lattice)

    def multiplier_ring(self) -> Order:
        return Order(self.field, lattice_colon(self.field, self.lattice, self.lattice), check=False)

    def integral_part(self) -> "FracIdeal":
        return FracIdeal(self.order, self.lattice.intersect(self.order.lattice), check=False)

    def with_order(self, order: Order) -> "FracIdeal":
        return FracIdeal(order, self.lattice)


def _divisors(n: int) -> list[int]:
    out = [1]
    for p, e in factorint(n).items():
        out = [d * p ** k for d in out for k in range(e + 1)]
    return sorted(out)


# free functions mirroring the operations

def ideal_product(a: FracIdeal, b: FracIdeal) -> FracIdeal:
    return a * b


def ideal_sum(a: FracIdeal, b: FracIdeal) -> FracIdeal:
    return a + b


def ideal_intersection(a: FracIdeal, b: FracIdeal) -> FracIdeal:
    return a & b


def ideal_colon(a: FracIdeal, b: FracIdeal) -> FracIdeal:
    return a.colon(b)


def multiplier_ring(a: FracIdeal) -> Order:
    return a.multiplier_ring()


def is_invertible(a: FracIdeal) -> bool:
    return a.is_invertible()


def ideal_norm(a: FracIdeal) -> Fraction:
    return a.norm()


def conductor(sub: Order, sup: Order) -> FracIdeal:
    """(sub : sup), the largest sup-ideal inside sub, as an ideal of sub."""
    if not sub <= sup:
        raise NotSuborder("first order is not contained in the second")
    return FracIdeal(sub, lattice_colon(sub.field, sub.lattice, sup.lattice), check=False)


def is_coprime(d: FracIdeal, c: FracIdeal) -> bool:
    """Whether d agrees with the order locally at every prime containing the integral ideal c."""
    if not c.is_integral():
        raise NotIntegral("second ideal must be integral")
    one = d.order.unit_ideal
    if d.integral_part() + c != one:
        return False
    return one.colon(d).integral_part() + c == one


def extend(a: FracIdeal, sup: Order) -> FracIdeal:
    if not a.order <= sup:
        raise NotSuborder("ideal's order is not contained in the target order")
    return FracIdeal(sup, lattice_product(sup.field, a.lattice, sup.lattice), check=False)


def contract_integral(a: FracIdeal, sub: Order) -> FracIdeal:
    if not sub <= a.order:
        raise NotSuborder("target order is not contained in the ideal's order")
    if not a.is_integral():
        raise NotIntegral("integral contraction needs an integral ideal")
    return FracIdeal(sub, a.lattice.intersect(sub.lattice), check=False)


def contract_coprime(a: FracIdeal, sub: Order, cond: FracIdeal | None = None) -> FracIdeal:
    """Contraction of a sup-ideal coprime to the conductor, as an invertible sub-ideal.

    Picks s in (O':a') with s = 1 mod the conductor, so that s*a' and s*O' are
    integral and coprime to the conductor, then divides their contractions.
    """
    sup = a.order
    if cond is None:
        cond = conductor(sub, sup)
    f_sup = FracIdeal(sup, cond.lattice, check=False)
    if not is_coprime(a, f_sup):
        raise NotCoprime("ideal is not coprime to the conductor")
    if a.is_integral():
        s = sup.field.one
    else:
        den_ideal = sup.unit_ideal.colon(a).integral_part()
        parts = split_sum(den_ideal.lattice, f_sup.lattice, sup.field.one.coords)
        if parts is None:
            raise NotCoprime("ideal is not coprime to the conductor")
        s = sup.field.element(parts[0])
    num = FracIdeal(sub, (a * s).lattice.intersect(sub.lattice), check=False)
    if s == sup.field.one:
        return num
    den = FracIdeal(sub, lattice_times(sup.lattice, s).intersect(sub.lattice), check=False)
    return num * den.inverse()


# finite algebras over F_p

def _rref(rows: Iterable[Sequence[int]], p: int) -> list[list[int]]:
    M = [[x % p for x in r] for r in rows]
    M = [r for r in M if any(r)]
    out: list[list[int]] = []
    piv: list[int] = []
    for r in M:
        r = list(r)
        for b, c in zip(out, piv):
            if r[c]:
                f = r[c]
                r = [(x - f * y) % p for x, y in zip(r, b)]
        c = next((j for j, x in enumerate(r) if x), None)
        if c is None:
            continue
        inv = pow(r[c], -1, p)
        r = [x * inv % p for x in r]
        for i, b in enumerate(out):
            if b[c]:
                f = b[c]
                out[i] = [(x - f * y) % p for x, y in zip(b, r)]
        out.append(r)
        piv.append(c)
    order = sorted(range(len(out)), key=lambda i: piv[i])
    return [out[i] for i in order]


def _reduce_mod(v: Sequence[int], basis: list[list[int]], p: int) -> list[int]:
    v = [x % p for x in v]
    for b in basis:
        c = next(j for j, x in enumerate(b) if x)
        if v[c]:
            f = v[c]
            v = [(x - f * y) % p for x, y in zip(v, b)]
    return v


def _left_kernel(M: Sequence[Sequence[int]], p: int) -> list[list[int]]:
    """Basis of {x : x * M = 0 mod p}."""
    m = len(M)
    k = len(M[0]) if M else 0
    aug = [list(M[i]) + [int(i == j) for j in range(m)] for i in range(m)]
    R = _rref(aug, p)
    return [r[k:] for r in R if not any(r[:k])] or []


class _FpQuotient:
    """The F_p-algebra O/pO with helpers for ideals given as subspaces."""

    def __init__(self, order: Order, p: int):
        self.order = order
        self.p = p
        self.n = order.degree
        T = order.structure_constants
        self.T = [[[x % p for x in T[i][j]] for j in range(self.n)] for i in range(self.n)]
        self.one = [x % p for x in order.int_coords(order.field.one)]

    def mul(self, u, v):
        n, p, T = self.n, self.p, self.T
        out = [0] * n
        for i in range(n):
            if u[i]:
                for j in range(n):
                    if v[j]:
                        c = u[i] * v[j]
                        row = T[i][j]
                        for k in range(n):
                            out[k] += c * row[k]
        return [x % p for x in out]

    def power(self, u, e):
        out = self.one
        base = u
        while e:
            if e & 1:
                out = self.mul(out, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return out

    @cached_property
    def frobenius(self):
        n = self.n
        return [self.power([int(i == j) for j in range(n)], self.p) for i in range(n)]

    def apply(self, M, v):
        n, p = self.n, self.p
        return [sum(v[i] * M[i][j] for i in range(n)) % p for j in range(n)]

    def ideal_times(self, x, Q):
        n = self.n
        return _rref(Q + [self.mul(x, [int(i == j) for j in range(n)]) for i in range(n)], self.p)

    def nilradical(self, V):
        n, p = self.n, self.p
        t = 1
        while p ** t < n:
            t += 1
        F = self.frobenius
        rows = []
        for i in range(n):
            v = [int(i == j) for j in range(n)]
            for _ in range(t):
                v = self.apply(F, v)
            rows.append(_reduce_mod(v, V, p))
        return _rref(_left_kernel(rows, p) + V, p)

    def fixed_space(self, Q):
        n, p = self.n, self.p
        F = self.frobenius
        rows = [_reduce_mod([(F[i][j] - int(i == j)) for j in range(n)], Q, p) for i in range(n)]
        return _rref(_left_kernel(rows, p), p)

    def min_poly(self, x, Q):
        p = self.p
        powers = [_reduce_mod(self.one, Q, p)]
        while True:
            nxt = _reduce_mod(self.mul(powers[-1], x), Q, p)
            ker = _left_kernel(powers + [nxt], p)
            if ker:
                rel = ker[0]
                lead = rel[-1]
                inv = pow(lead, -1, p)
                return [c * inv % p for c in rel]
            powers.append(nxt)

    def maximal_over(self, Q):
        n, p = self.n, self.p
        fixed = self.fixed_space(Q)
        base = _rref(Q + [self.one], p)
        if len(fixed) - len(Q) <= 1:
            return [Q]
        x = next(v for v in fixed if any(_reduce_mod(v, base, p)))
        out = []
        for c in _roots_mod_p(self.min_poly(x, Q), p):
            xc = [(a - c * b) % p for a, b in zip(x, self.one)]
            out.extend(self.maximal_over(self.ideal_times(xc, Q)))
        return out


def _roots_mod_p(coeffs: Sequence[int], p: int) -> list[int]:
    """Roots in F_p of a polynomial (lowest degree first) that splits into distinct linear factors."""
    if p <= 20000:
        roots = []
        for r in range(p):
            v = 0
            for c in reversed(coeffs):
                v = (v * r + c) % p
            if v == 0:
                roots.append(r)
        return roots
    from sympy import Poly, symbols

    X = symbols("X")
    P = Poly(list(reversed(coeffs)), X, modulus=p)
    out = []
    for fac, _ in P.factor_list()[1]:
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            out.append((-int(b) * pow(int(a), -1, p)) % p)
    return sorted(out)


def _ideal_coords_matrix(a: FracIdeal) -> list[list[int]]:
    O = a.order
    return [O.int_coords(x) for x in a.basis]


def _lift_subspace(order: Order, Q: list[list[int]], p: int) -> FracIdeal:
    n = order.degree
    rows = [list(r) for r in Q] + [[p * int(i == j) for j in range(n)] for i in range(n)]
    H = hnf(rows, n)
    elems = [order.from_coords(r) for r in H]
    return FracIdeal(order, lattice_of(elems), check=False)


def primes_over(order: Order, p: int, containing: FracIdeal | None = None) -> list[FracIdeal]:
    """Maximal ideals of the order containing p (and the given integral ideal, if any)."""
    A = _FpQuotient(order, p)
    V = _rref(_ideal_coords_matrix(containing), p) if containing is not None else []
    if len(V) == order.degree:
        return []
    J = A.nilradical(V)
    primes = [_lift_subspace(order, Q, p) for Q in A.maximal_over(J)]
    primes.sort(key=lambda P: (P.norm(), P.lattice.mat))
    return primes


def maximal_ideals_containing(c: FracIdeal) -> list[FracIdeal]:
    if not c.is_integral():
        raise NotIntegral("ideal must be integral")
    N = int(c.norm())
    out = []
    for p in sorted(factorint(N)):
        out.extend(primes_over(c.order, p, containing=c))
    return out


def primes_up_to(order: Order, bound: int):
    """Maximal ideals of the order of norm at most bound, by increasing rational prime."""
    from sympy import primerange

    for p in primerange(2, bound + 1):
        for P in primes_over(order, p):
            if P.norm() <= bound:
                yield P


def maximal_ideals_by_enumeration(c: FracIdeal, bound: int = 10 ** 6) -> list[FracIdeal]:
    """Same answer as maximal_ideals_containing, found by listing ideals of a finite ring.

    For each p | Nm(c), the ideals of A = O/(c + pO) are built as sets of residues
    by adding principal ideals; the maximal proper ones lift to the answer.
    """
    if not c.is_integral():
        raise NotIntegral("ideal must be integral")
    O = c.order
    n = O.degree
    out = []
    for p in sorted(factorint(int(c.norm()))):
        cp = c + FracIdeal.generated_by(O, [O.field(p)])
        H = hnf(_ideal_coords_matrix(cp), n)
        size = 1
        for i in range(n):
            size *= H[i][i]
        if size * size > bound:
            raise ResidueRingTooLarge(f"residue ring has {size} elements (bound {bound})")

        def red(v):
            v = list(v)
            for i in range(n):
                q = v[i] // H[i][i]
                if q:
                    for j in range(i, n):
                        v[j] -= q * H[i][j]
            return tuple(v)

        from itertools import product as iproduct

        elems = [red(t) for t in iproduct(*[range(H[i][i]) for i in range(n)])]
        zero = red([0] * n)
        one = red(O.int_coords(O.field.one))

        def add(u, v):
            return red([a + b for a, b in zip(u, v)])

        def closure(gens):
            # additive span of the given residues, which is an ideal when gens is O-stable
            span = {zero}
            for g in gens:
                if g in span:
                    continue
                new = set(span)
                frontier = list(span)
                while frontier:
                    x = add(frontier.pop(), g)
                    if x not in new:
                        new.add(x)
                        frontier.append(x)
                span = new
            return frozenset(span)

        principal = {x: closure([red(O.mul_coords(x, y)) for y in elems]) for x in elems}
        seen = set()
        stack = [frozenset([zero])]
        maximal = []
        while stack:
            I = stack.pop()
            if I in seen:
                continue
            seen.add(I)
            bigger = False
            for x in elems:
                if x in I:
                    continue
                J = closure(list(I) + list(principal[x]))
                if one in J:
                    continue
                bigger = True
                if J not in seen:
                    stack.append(J)
            if not bigger:
                maximal.append(I)
        for I in maximal:
            gens = [O.from_coords(v) for v in I if v != zero]
            P = cp + FracIdeal.generated_by(O, gens) if gens else cp
            out.append(P)
    out.sort(key=lambda P: (P.norm(), P.lattice.mat))
    return out


def primary_decomposition(m: FracIdeal) -> list[tuple[FracIdeal, FracIdeal]]:
    """Pairs (prime P, P-primary component) whose product is m, for an integral ideal m."""
    if not m.is_integral():
        raise NotIntegral("primary decomposition needs an integral ideal")
    O = m.order
    primes = maximal_ideals_containing(m)
    if not primes:
        return []
    out = []
    for i, P in enumerate(primes):
        others = [Q for j, Q in enumerate(primes) if j != i]
        if not others:
            out.append((P, m))
            continue
        inter = others[0]
        for Q in others[1:]:
            inter = inter & Q
        parts = split_sum(inter.lattice, P.lattice, O.field.one.coords)
        s = O.field.element(parts[0])
        q = m
        spow = s
        while True:
            nxt = FracIdeal(O, lattice_times(m.lattice, spow.inverse()).intersect(O.lattice), check=False)
            if nxt == q:
                break
            q = nxt
            spow = spow * s
        out.append((P, q))
    prod_ = out[0][1]
    for _, q in out[1:]:
        prod_ = prod_ * q
    if prod_ != m:
        raise ArithmeticError("primary components do not multiply back to the ideal")
    return out


__all__ = [
    "Order",
    "FracIdeal",
    "conductor",
    "is_coprime",
    "extend",
    "contract_integral",
    "contract_coprime",
    "primary_decomposition",
    "maximal_ideals_containing",
    "maximal_ideals_by_enumeration",
    "primes_up_to",
    "primes_over",
    "lattice_of",
    "lattice_times",
    "lattice_product",
    "lattice_colon",
]
