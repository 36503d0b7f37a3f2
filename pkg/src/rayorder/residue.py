"""Finite residue rings O/d, their unit groups, and congruences modulo ideals."""

from __future__ import annotations

from functools import cached_property
from itertools import product as iproduct
from typing import Sequence

from .errors import NotIntegral, NotSuborder, ResidueRingTooLarge
from .field import FieldElement
from .ideals import FracIdeal, Order, lattice_times, maximal_ideals_containing
from .kernels import make_arith
from .zmodule import Cokernel, FinAbGroup, HNFLattice, hnf, split_sum

DEFAULT_BOUND = 10 ** 6
_bound = DEFAULT_BOUND


def set_residue_bound(bound: int | None) -> int:
    """Set the default cap on #(O/d) for enumeration; returns the previous value."""
    global _bound
    old = _bound
    _bound = DEFAULT_BOUND if bound is None else int(bound)
    return old


def ideal_coords(order: Order, a: FracIdeal | HNFLattice) -> list[list[int]]:
    """Hermite form, in the order's basis, of an ideal contained in the order."""
    L = a.lattice if isinstance(a, FracIdeal) else a
    K = order.field
    rows = []
    for r in L.mat:
        x = FieldElement(K, r, L.den)
        rows.append(order.int_coords(x))
    return hnf(rows, order.degree)


class UnitGroup:
    """(O/d)^x with Smith generators and a discrete logarithm."""

    def __init__(self, ring: "ResidueRing", gens: list[int], relations: list[list[int]], table: dict):
        self.ring = ring
        self._gens = gens
        self._table = table
        self.cokernel = Cokernel(relations, len(gens)) if gens else None
        self.group = self.cokernel.group if gens else FinAbGroup(())

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def invariants(self) -> tuple[int, ...]:
        return self.group.invariants

    def dlog_idx(self, idx: int) -> tuple[int, ...]:
        if self.cokernel is None:
            if idx not in self._table:
                raise ValueError("residue is not a unit")
            return ()
        try:
            exps = self._table[idx]
        except KeyError:
            raise ValueError("residue is not a unit") from None
        return self.cokernel.project(exps)

    def dlog(self, x: FieldElement) -> tuple[int, ...]:
        return self.dlog_idx(self.ring.residue(x))

    @cached_property
    def generators(self) -> list[int]:
        """Residue indices of the Smith generators, one per invariant factor."""
        if self.cokernel is None:
            return []
        out = []
        R = self.ring
        for vec in self.cokernel.generator_vectors():
            acc = R.one
            for g, e in zip(self._gens, vec):
                e %= self.order
                if e:
                    acc = R.arith.mul_idx(acc, R.arith.pow_idx(g, e))
            out.append(acc)
        return out

    def element_from_dlog(self, v: Sequence[int]) -> int:
        R = self.ring
        acc = R.one
        for g, e, d in zip(self.generators, v, self.invariants):
            e %= d
            if e:
                acc = R.arith.mul_idx(acc, R.arith.pow_idx(g, e))
        return acc


class ResidueRing:
    """The finite ring O/d for an integral ideal d of the order O."""

    def __init__(self, order: Order, modulus: FracIdeal | HNFLattice, bound: int | None = None,
                 backend: str | None = None):
        self.order = order
        lat = modulus.lattice if isinstance(modulus, FracIdeal) else modulus
        if not order.lattice.contains(lat):
            raise NotIntegral("modulus must be contained in the order")
        self.modulus = FracIdeal(order, lat, check=isinstance(modulus, HNFLattice))
        self.H = ideal_coords(order, lat)
        size = 1
        for i in range(order.degree):
            size *= self.H[i][i]
        bound = _bound if bound is None else bound
        if size > bound:
            raise ResidueRingTooLarge(f"residue ring has {size} elements (bound {bound})")
        self.size = size
        one = order.int_coords(order.field.one)
        self.arith = make_arith(order.structure_constants, self.H, one, backend)
        self.one = self.arith.one_idx

    def residue(self, x: FieldElement) -> int:
        return self.arith.encode(self.order.int_coords(x))

    def element(self, idx: int) -> FieldElement:
        return self.order.from_coords(self.arith.decode(idx))

    def mul(self, a: int, b: int) -> int:
        return self.arith.mul_idx(a, b)

    def pow(self, a: int, e: int) -> int:
        return self.arith.pow_idx(a, e)

    @cached_property
    def primes(self) -> list[FracIdeal]:
        if self.size == 1:
            return []
        return maximal_ideals_containing(self.modulus)

    @cached_property
    def unit_mask(self) -> bytearray:
        if self.size == 1:
            return bytearray(b"\x01")
        return self.arith.unit_mask([ideal_coords(self.order, P) for P in self.primes])

    def is_unit_idx(self, idx: int) -> bool:
        return bool(self.unit_mask[idx])

    def is_unit(self, x: FieldElement) -> bool:
        return self.is_unit_idx(self.residue(x))

    @cached_property
    def unit_indices(self) -> list[int]:
        mask = self.unit_mask
        return [i for i in range(self.size) if mask[i]]

    def unit_count(self) -> int:
        return sum(self.unit_mask)

    @cached_property
    def unit_group(self) -> UnitGroup:
        units = self.unit_indices
        if len(units) == 1:
            return UnitGroup(self, [], [], {units[0]: ()})
        gens, rels, table = self.arith.group_table(units)
        return UnitGroup(self, gens, rels, table)

    def coset_reps(self, a: FracIdeal | HNFLattice) -> list[int]:
        """Residues of the elements of a/d for an ideal d <= a <= O (as indices)."""
        lat = a.lattice if isinstance(a, FracIdeal) else a
        A = ideal_coords(self.order, lat)
        n = self.order.degree
        # express d in the basis of a
        inv = HNFLattice(1, A)
        drows = []
        for r in self.H:
            c = inv.coords_of(r)
            if any(v.denominator != 1 for v in c):
                raise NotSuborder("modulus is not contained in the ideal")
            drows.append([int(v) for v in c])
        D = hnf(drows, n)
        out = set()
        for t in iproduct(*[range(D[i][i]) for i in range(n)]):
            vec = [sum(t[i] * A[i][j] for i in range(n)) for j in range(n)]
            out.add(self.arith.encode(vec))
        return sorted(out)

    def congruence_units(self, m: FracIdeal | HNFLattice) -> list[int]:
        """Units of O/d of the form 1 + x with x in m (d <= m <= O)."""
        one = self.arith.one_vec
        mask = self.unit_mask
        out = []
        for idx in self.coset_reps(m):
            v = self.arith.decode(idx)
            j = self.arith.encode([a + b for a, b in zip(v, one)])
            if mask[j]:
                out.append(j)
        return sorted(set(out))


def residue_ring(order: Order, modulus: FracIdeal, bound: int | None = None) -> ResidueRing:
    return ResidueRing(order, modulus, bound=bound)


def unit_group(R: ResidueRing) -> UnitGroup:
    return R.unit_group


def subgroup_lattice(G: UnitGroup, elements: Sequence[int]) -> list[list[int]]:
    """Hermite basis (in Smith coordinates of G) of the subgroup generated by the elements."""
    inv = G.invariants
    k = len(inv)
    rows = [list(G.dlog_idx(e)) for e in elements]
    rows += [[d if i == j else 0 for j in range(k)] for i, d in enumerate(inv)]
    if k == 0:
        return []
    return hnf(rows, k)


def quotient_structure(big: list[list[int]], small: list[list[int]]) -> Cokernel:
    """big/small for full-rank lattices small <= big in Z^k (as a Cokernel of big's coordinates)."""
    k = len(big)
    if k == 0:
        return Cokernel([], 0)
    L = HNFLattice(1, big)
    rels = []
    for r in small:
        c = L.coords_of(r)
        if any(v.denominator != 1 for v in c):
            raise ValueError("sublattice not contained")
        rels.append([int(v) for v in c])
    return Cokernel(rels, k)


def congruence_unit_group(ring_sup: ResidueRing, m: FracIdeal | HNFLattice) -> list[list[int]]:
    """Lattice (in Smith coordinates of (O'/d)^x) of U_m(O/d) = units of O'/d in 1 + m."""
    G = ring_sup.unit_group
    return subgroup_lattice(G, ring_sup.congruence_units(m))


def is_one_mod(x: FieldElement, m: FracIdeal) -> bool:
    return m.contains(x - 1)


def _denominator_splitter(alpha: FieldElement, m: FracIdeal) -> FieldElement | None:
    """v in O with v*alpha in O and v = 1 mod m, or None when the denominator of alpha meets m."""
    O = m.order
    if O.contains(alpha):
        return O.field.one
    L = lattice_times(O.lattice, alpha.inverse()).intersect(O.lattice)
    parts = split_sum(L, m.lattice, O.field.one.coords)
    if parts is None:
        return None
    return O.field.element(parts[0])


def ray_congruent(alpha: FieldElement, m: FracIdeal) -> bool:
    """alpha = 1 mod* m over the order of m: alpha - 1 = u/v with u in m and vO + m = O."""
    beta = alpha - 1
    if beta.is_zero():
        return True
    v = _denominator_splitter(beta, m)
    if v is None:
        return False
    return m.contains(v * beta)


def residue_of(alpha: FieldElement, m: FracIdeal) -> FieldElement | None:
    """An element of O congruent to alpha modulo m, when alpha's denominator is prime to m."""
    v = _denominator_splitter(alpha, m)
    if v is None:
        return None
    return v * alpha


__all__ = [
    "ResidueRing",
    "UnitGroup",
    "residue_ring",
    "unit_group",
    "ray_congruent",
    "residue_of",
    "subgroup_lattice",
    "quotient_structure",
    "congruence_unit_group",
    "ideal_coords",
    "set_residue_bound",
]
