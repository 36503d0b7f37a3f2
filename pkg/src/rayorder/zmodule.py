"""Integer linear algebra: Hermite and Smith forms, lattices in Q^n, finite abelian groups."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Iterable, Sequence

from .errors import InfiniteCokernel, ParseError, RankDeficient


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, s, t with s*a + t*b = g >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def det_int(M: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(map(int, r)) for r in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if sw is None:
                return 0
            A[k], A[sw] = A[sw], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i = A[i]
            row_k = A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * A[n - 1][n - 1]


def det_fraction(M: Sequence[Sequence[Fraction]]) -> Fraction:
    d = 1
    for r in M:
        for x in r:
            x = Fraction(x)
            d = lcm(d, x.denominator)
    n = len(M)
    return Fraction(det_int([[int(Fraction(x) * d) for x in r] for r in M]), d ** n)


# Hermite normal form

def hnf(rows: Iterable[Sequence[int]], ncols: int | None = None) -> list[list[int]]:
    """Row Hermite form: echelon, positive pivots, entries above each pivot in [0, pivot).

    Zero rows are dropped. Rows are inserted one at a time so the working
    matrix never grows beyond the rank plus one.
    """
    basis: dict[int, list[int]] = {}
    for r in rows:
        v = [int(x) for x in r]
        if ncols is None:
            ncols = len(v)
        _insert(basis, v, ncols)
    out = [basis[c] for c in sorted(basis)]
    _reduce_above(out, ncols)
    return out


def _insert(basis: dict[int, list[int]], v: list[int], ncols: int) -> None:
    for col in range(ncols):
        a = v[col]
        if a == 0:
            continue
        b = basis.get(col)
        if b is None:
            if a < 0:
                v = [-x for x in v]
            basis[col] = v
            _reduce_row_by(basis, col)
            return
        p = b[col]
        if a % p == 0:
            q = a // p
            v = [x - q * y for x, y in zip(v, b)]
            continue
        g, s, t = xgcd(p, a)
        newb = [s * y + t * x for x, y in zip(v, b)]
        v = [(p // g) * x - (a // g) * y for x, y in zip(v, b)]
        basis[col] = newb
        _reduce_row_by(basis, col)


def _reduce_row_by(basis: dict[int, list[int]], col: int) -> None:
    # reduce row at col by rows with larger pivots so entries stay small
    row = basis[col]
    for c2 in sorted(basis):
        if c2 <= col:
            continue
        p = basis[c2][c2]
        q = row[c2] // p
        if q:
            other = basis[c2]
            for j in range(c2, len(row)):
                row[j] -= q * other[j]


def _reduce_above(rows: list[list[int]], ncols: int) -> None:
    # ascending: reducing at pivot i only touches columns of later pivots, fixed afterwards
    piv = [next(j for j, x in enumerate(r) if x) for r in rows]
    for i in range(len(rows)):
        c = piv[i]
        p = rows[i][c]
        for k in range(i):
            q = rows[k][c] // p
            if q:
                rk, ri = rows[k], rows[i]
                for j in range(c, ncols):
                    rk[j] -= q * ri[j]


def pivots(rows: Sequence[Sequence[int]]) -> list[int]:
    return [next(j for j, x in enumerate(r) if x) for r in rows]


def _vec_den(v: Sequence) -> tuple[list[int], int]:
    fr = [Fraction(x) for x in v]
    d = 1
    for q in fr:
        d = lcm(d, q.denominator)
    return [int(q * d) for q in fr], d


class HNFLattice:
    """Full-rank lattice (1/den) * rowspace(mat) in Q^n, mat in row Hermite form.

    The pair (den, mat) is a canonical form, so equality is structural.
    """

    __slots__ = ("den", "mat", "n", "_hash")

    def __init__(self, den: int, mat: Sequence[Sequence[int]], _normalized: bool = False):
        mat = [list(r) for r in mat]
        n = len(mat[0]) if mat else 0
        if not _normalized:
            mat = hnf(mat, n)
            if len(mat) != n:
                raise RankDeficient(f"lattice has rank {len(mat)} < {n}")
            g = den
            for r in mat:
                for x in r:
                    g = gcd(g, x)
            if g > 1:
                den //= g
                mat = [[x // g for x in r] for r in mat]
        self.den = den
        self.mat = tuple(tuple(r) for r in mat)
        self.n = n
        self._hash = None

    @classmethod
    def from_rational_rows(cls, rows: Iterable[Sequence], n: int | None = None) -> "HNFLattice":
        rows = [list(r) for r in rows]
        if not rows:
            raise RankDeficient("no generators")
        d = 1
        for r in rows:
            for x in r:
                d = lcm(d, Fraction(x).denominator)
        irows = [[int(Fraction(x) * d) for x in r] for r in rows]
        return cls(d, irows)

    @classmethod
    def from_int_rows(cls, den: int, rows: Iterable[Sequence[int]]) -> "HNFLattice":
        return cls(den, [list(r) for r in rows])

    @classmethod
    def standard(cls, n: int) -> "HNFLattice":
        return cls(1, [[1 if i == j else 0 for j in range(n)] for i in range(n)], _normalized=True)

    def __eq__(self, other):
        return isinstance(other, HNFLattice) and self.den == other.den and self.mat == other.mat

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.den, self.mat))
        return self._hash

    def __repr__(self):
        return f"HNFLattice({self.to_text()!r})"

    def to_text(self) -> str:
        return "; ".join([str(self.den)] + [" ".join(str(x) for x in r) for r in self.mat])

    @classmethod
    def from_text(cls, text: str) -> "HNFLattice":
        parts = [p.strip() for p in text.split(";")]
        try:
            den = int(parts[0])
            rows = [[int(x) for x in p.replace(",", " ").split()] for p in parts[1:]]
        except ValueError as exc:
            raise ParseError(f"bad lattice text ({exc})", text, 0) from None
        if den <= 0 or not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ParseError("lattice text must be 'den; row; row; ...' with equal-length rows", text, 0)
        return cls(den, rows)

    def rational_rows(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.den) for x in r] for r in self.mat]

    def diag(self) -> list[int]:
        return [self.mat[i][i] for i in range(self.n)]

    def covolume(self) -> Fraction:
        return Fraction(prod(self.diag()), self.den ** self.n)

    def scale(self, q) -> "HNFLattice":
        q = Fraction(q)
        if q == 0:
            raise RankDeficient("scaling by zero")
        num, d = abs(q.numerator), q.denominator
        return HNFLattice(self.den * d, [[x * num for x in r] for r in self.mat])

    def coords_of(self, vec: Sequence) -> list[Fraction] | None:
        """Coordinates of a rational vector in the row basis (rational in general)."""
        v = [Fraction(x) * self.den for x in vec]
        c = []
        for i in range(self.n):
            p = self.mat[i][i]
            ci = v[i] / p
            c.append(ci)
            if ci:
                row = self.mat[i]
                for j in range(i, self.n):
                    v[j] -= ci * row[j]
        return c

    def contains_vector(self, vec: Sequence) -> bool:
        return all(x.denominator == 1 for x in self.coords_of(vec))

    def contains_int_vector(self, num: Sequence[int], den: int = 1) -> bool:
        # fast path for integer numerators over a common denominator
        D = self.den
        if den != 1:
            if D % den:
                v = [Fraction(x, den) for x in num]
                return self.contains_vector(v)
            v = [x * (D // den) for x in num]
        else:
            v = [x * D for x in num]
        for i in range(self.n):
            p = self.mat[i][i]
            if v[i] % p:
                return False
            q = v[i] // p
            if q:
                row = self.mat[i]
                for j in range(i, self.n):
                    v[j] -= q * row[j]
        return True

    def contains(self, other: "HNFLattice") -> bool:
        return all(self.contains_int_vector(r, other.den) for r in other.mat)

    def __le__(self, other):
        return other.contains(self)

    def __ge__(self, other):
        return self.contains(other)

    def __add__(self, other: "HNFLattice") -> "HNFLattice":
        D = lcm(self.den, other.den)
        a, b = D // self.den, D // other.den
        return HNFLattice(D, [[x * a for x in r] for r in self.mat] + [[x * b for x in r] for r in other.mat])

    def intersect(self, other: "HNFLattice") -> "HNFLattice":
        n = self.n
        D = lcm(self.den, other.den)
        a, b = D // self.den, D // other.den
        rows = [[x * a for x in r] * 2 for r in self.mat]
        rows += [[x * b for x in r] + [0] * n for r in other.mat]
        H = hnf(rows, 2 * n)
        low = [r[n:] for r in H if not any(r[:n])]
        return HNFLattice(D, low)

    __and__ = intersect

    def index_in(self, sup: "HNFLattice") -> Fraction:
        """Generalized index [sup : self] = covol(self) / covol(sup)."""
        return self.covolume() / sup.covolume()


def lat_index(a: HNFLattice, b: HNFLattice) -> Fraction:
    """Generalized index [a : b]."""
    return b.index_in(a)


def hnf_with_transform(rows: Sequence[Sequence[int]], ncols: int) -> tuple[list[list[int]], list[list[int]]]:
    """Hermite form H of the rows plus T with H = T * rows (kernel rows included, H padded)."""
    m = len(rows)
    aug = [list(r) + [1 if i == j else 0 for j in range(m)] for i, r in enumerate(rows)]
    H = hnf(aug, ncols + m)
    return [r[:ncols] for r in H], [r[ncols:] for r in H]


def split_sum(a: HNFLattice, b: HNFLattice, target: Sequence) -> tuple[list[Fraction], list[Fraction]] | None:
    """Find x in a, y in b with x + y = target, or None if target is not in a + b."""
    n = a.n
    D = lcm(a.den, b.den)
    ra = [[x * (D // a.den) for x in r] for r in a.mat]
    rb = [[x * (D // b.den) for x in r] for r in b.mat]
    H, T = hnf_with_transform(ra + rb, n)
    t = [Fraction(x) * D for x in target]
    top = [(h, tr) for h, tr in zip(H, T) if any(h)]
    coeff = [0] * len(ra + rb)
    for i, (h, tr) in enumerate(top):
        p = h[i]
        if t[i] % p:
            return None
        q = int(t[i] // p)
        if q:
            t = [x - q * y for x, y in zip(t, h)]
            coeff = [c + q * u for c, u in zip(coeff, tr)]
    if any(t):
        return None
    x = [Fraction(0)] * n
    for c, r in zip(coeff[: len(ra)], ra):
        if c:
            x = [xi + c * ri for xi, ri in zip(x, r)]
    x = [xi / D for xi in x]
    y = [Fraction(ti) - xi for ti, xi in zip(target, x)]
    return x, y


def kernel_mod(images: Sequence[Sequence[int]], moduli: Sequence[int]) -> list[list[int]]:
    """Hermite basis of {x in Z^r : x * images = 0 in prod Z/moduli}; modulus 0 means Z."""
    r = len(images)
    k = len(moduli)
    rows = [list(images[i]) + [1 if i == j else 0 for j in range(r)] for i in range(r)]
    for j, d in enumerate(moduli):
        if d:
            rows.append([d if c == j else 0 for c in range(k)] + [0] * r)
    H = hnf(rows, k + r)
    return [row[k:] for row in H if not any(row[:k])]


# Smith normal form

def snf(A: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Diagonal d, column transform V and its inverse with U*A*V = diag(d) for some unimodular U.

    d has length ncols (zero-padded) and satisfies d[i] | d[i+1].
    """
    A = [list(map(int, r)) for r in A]
    m = len(A)
    k = ncols if ncols is not None else (len(A[0]) if A else 0)
    V = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
    Vi = [[1 if i == j else 0 for j in range(k)] for i in range(k)]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def col_sub(j, t, q):
        # column j -= q * column t
        for r in A:
            r[j] -= q * r[t]
        for r in V:
            r[j] -= q * r[t]
        Vi[t] = [x + q * y for x, y in zip(Vi[t], Vi[j])]

    t = 0
    while t < min(m, k):
        best = None
        for i in range(t, m):
            for j in range(t, k):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        if j != t:
            col_swap(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                if A[i][t]:
                    dirty = True
            for j in range(t + 1, k):
                q = A[t][j] // p
                if q:
                    col_sub(j, t, q)
                if A[t][j]:
                    dirty = True
            if dirty:
                best = None
                for i in range(t, m):
                    if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                        best = (abs(A[i][t]), "r", i)
                for j in range(t, k):
                    if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                        best = (abs(A[t][j]), "c", j)
                _, kind, idx = best
                if kind == "r":
                    A[t], A[idx] = A[idx], A[t]
                elif idx != t:
                    col_swap(t, idx)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, k):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            A[t] = [x + y for x, y in zip(A[t], A[bad])]
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
        t += 1
    d = [A[i][i] if i < m else 0 for i in range(k)]
    return d, V, Vi


@dataclass(frozen=True)
class FinAbGroup:
    """Finite abelian group as Z/d1 x ... x Z/dk with d1 | d2 | ... and every di > 1."""

    invariants: tuple[int, ...] = ()

    def __post_init__(self):
        inv = tuple(int(d) for d in self.invariants if d != 1)
        for a, b in zip(inv, inv[1:]):
            if b % a:
                raise ValueError(f"invariant factors must form a divisibility chain: {inv}")
        if any(d <= 0 for d in inv):
            raise ValueError("invariant factors must be positive")
        object.__setattr__(self, "invariants", inv)

    @classmethod
    def from_relations(cls, relations: Sequence[Sequence[int]], ngens: int) -> "FinAbGroup":
        return Cokernel(relations, ngens).group

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "FinAbGroup":
        orders = list(orders)
        return Cokernel([[d if i == j else 0 for j in range(len(orders))] for i, d in enumerate(orders)],
                        len(orders)).group

    @property
    def order(self) -> int:
        return prod(self.invariants)

    def is_trivial(self) -> bool:
        return not self.invariants

    def __str__(self):
        if not self.invariants:
            return "1"
        return " x ".join(f"Z/{d}" for d in reversed(self.invariants))

    def text(self) -> str:
        return str(self)


class Cokernel:
    """Z^k / rowspace(relations) with a projection onto Smith coordinates."""

    def __init__(self, relations: Sequence[Sequence[int]], k: int, allow_infinite: bool = False):
        rel = [list(r) for r in relations if any(r)]
        d, V, Vi = snf(rel, k) if rel else ([0] * k, None, None)
        if V is None:
            V = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
            Vi = [row[:] for row in V]
        if not allow_infinite and any(x == 0 for x in d):
            raise InfiniteCokernel("relations do not have full rank")
        self.k = k
        self.diag = d
        self.V = V
        self.Vi = Vi
        self.keep = [i for i, x in enumerate(d) if x != 1]
        self.moduli = [d[i] for i in self.keep]
        self.group = FinAbGroup(tuple(x for x in self.moduli if x)) if not allow_infinite else None

    @property
    def order(self) -> int:
        return prod(self.moduli)

    def project(self, x: Sequence[int]) -> tuple[int, ...]:
        k = self.k
        y = [sum(x[a] * self.V[a][i] for a in range(k) if x[a]) for i in self.keep]
        return tuple(v % m if m else v for v, m in zip(y, self.moduli))

    def generator_vectors(self) -> list[list[int]]:
        """Exponent vectors (old coordinates) of the Smith generators that survive."""
        return [list(self.Vi[i]) for i in self.keep]

    def is_zero(self, x: Sequence[int]) -> bool:
        return not any(self.project(x))


def abelian_group_from_elements(elements: Sequence, mul, one) -> tuple[list, list[list[int]], dict]:
    """Generators, relations and exponent table for a finite abelian group given by enumeration.

    Each new generator is an element outside the subgroup found so far; its
    relation is the first power landing back in that subgroup.
    """
    table = {one: ()}
    gens: list = []
    relations: list[list[int]] = []
    target = len(set(elements))
    for g in elements:
        if len(table) == target:
            break
        if g in table:
            continue
        r = len(gens)
        # smallest k with g^k in the current subgroup
        k = 1
        pw = g
        while pw not in table:
            pw = mul(pw, g)
            k += 1
        rel = [-e for e in table[pw]] + [0] * (r - len(table[pw]))
        relations = [row + [0] for row in relations]
        relations.append(rel + [k])
        old = list(table.items())
        table = {h: v + (0,) * (r - len(v)) + (0,) for h, v in old}
        cur = g
        for j in range(1, k):
            for h, v in old:
                table[mul(h, cur)] = v + (0,) * (r - len(v)) + (j,)
            cur = mul(cur, g)
        gens.append(g)
    return gens, relations, table


__all__ = [
    "HNFLattice",
    "FinAbGroup",
    "Cokernel",
    "hnf",
    "snf",
    "xgcd",
    "det_int",
    "det_fraction",
    "lat_index",
    "kernel_mod",
    "split_sum",
    "abelian_group_from_elements",
]
