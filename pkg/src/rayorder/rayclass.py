"""Ray class groups of orders with a modulus and a set of real places.

A level datum D = (O; m, S) is an order O, an integral O-ideal m and a set S
of real places. Unit subgroups of O_K^x are tracked as exponent lattices over
a fixed presentation of O_K^x (generators plus torsion relations), so every
index and quotient becomes a Hermite or Smith form computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product as iproduct
from typing import Callable, Sequence

from .errors import (
    InvalidLevel,
    WitnessInvalid,
    NotCoprime,
    NotPrime,
    NotSuborder,
    UnitsUnavailable,
)
from .field import FieldElement, NumberField
from .ideals import (
    FracIdeal,
    Order,
    conductor,
    contract_coprime,
    contract_integral,
    extend,
    is_coprime,
    lattice_colon,
    maximal_ideals_containing,
)
from .residue import ResidueRing, quotient_structure, ray_congruent, residue_of, subgroup_lattice
from .zmodule import Cokernel, FinAbGroup, HNFLattice, det_int, hnf, kernel_mod


@dataclass(frozen=True)
class GlobalUnits:
    """O_K^x presented as Z^r / T: generators and the torsion relations among them."""

    gens: tuple[FieldElement, ...]
    relations: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.gens)

    def element(self, exps: Sequence[int]) -> FieldElement:
        out = self.gens[0].field.one
        for g, e in zip(self.gens, exps):
            if e:
                out = out * g ** e
        return out


class Arithmetic:
    """Global inputs for a field: maximal order, units, class groups, principal generators."""

    field: NumberField
    maximal_order: Order
    units: GlobalUnits

    def class_group(self, order: Order):
        raise UnitsUnavailable("class groups are not available for this field")

    def principal_generator(self, ideal: FracIdeal) -> FieldElement | None:
        raise UnitsUnavailable("principal ideal testing is not available for this field")


class QuadraticArithmetic(Arithmetic):
    def __init__(self, field: NumberField, disc_bound: int | None = None):
        from .quadratic import DEFAULT_DISC_BOUND, QuadraticField

        self.Q = QuadraticField(field)
        self.field = field
        self.maximal_order = self.Q.maximal_order
        self.disc_bound = disc_bound or DEFAULT_DISC_BOUND
        if self.Q.is_real:
            self.units = GlobalUnits((field(-1), self.Q.fundamental_unit), ((2, 0),))
        else:
            z, w = self.Q.torsion
            self.units = GlobalUnits((z,), ((w,),))

    def class_group(self, order: Order):
        from .quadratic import ring_class_group

        return ring_class_group(order, self.disc_bound)

    def principal_generator(self, ideal: FracIdeal) -> FieldElement | None:
        from .quadratic import is_principal

        return is_principal(ideal)


class SuppliedArithmetic(Arithmetic):
    """Arithmetic for fields of higher degree from user-supplied units and class groups."""

    def __init__(self, maximal_order: Order, units: GlobalUnits,
                 class_groups: dict | None = None,
                 principal: Callable[[FracIdeal], FieldElement | None] | None = None):
        self.field = maximal_order.field
        self.maximal_order = maximal_order
        self.units = units
        self._groups = class_groups or {}
        self._principal = principal

    def class_group(self, order: Order):
        if order in self._groups:
            return self._groups[order]
        raise UnitsUnavailable("no class group supplied for this order")

    def principal_generator(self, ideal):
        if self._principal is None:
            raise UnitsUnavailable("no principal ideal test supplied")
        return self._principal(ideal)


@lru_cache(maxsize=64)
def arithmetic_for(field: NumberField) -> Arithmetic:
    if field.degree == 2:
        return QuadraticArithmetic(field)
    raise UnitsUnavailable("unit groups of fields of degree >= 3 must be supplied")


def _class_group_of(arith: Arithmetic, order: Order) -> FinAbGroup:
    G = arith.class_group(order)
    return G.group if hasattr(G, "group") else G


@dataclass(frozen=True, eq=False)
class LevelDatum:
    order: Order
    modulus: FracIdeal
    places: frozenset = frozenset()

    def __post_init__(self):
        if self.modulus.order != self.order:
            raise InvalidLevel("modulus must be an ideal of the order")
        if not self.modulus.is_integral():
            raise InvalidLevel("modulus must be integral")
        nplaces = len(self.order.field.real_places)
        for s in self.places:
            if not 1 <= s <= nplaces:
                raise InvalidLevel(f"real place {s} does not exist (field has {nplaces})")
        object.__setattr__(self, "places", frozenset(self.places))

    def __eq__(self, other):
        return (isinstance(other, LevelDatum) and self.order == other.order
                and self.modulus == other.modulus and self.places == other.places)

    def __hash__(self):
        return hash((self.order, self.modulus, self.places))

    @classmethod
    def trivial(cls, order: Order) -> "LevelDatum":
        return cls(order, order.unit_ideal, frozenset())

    def le(self, other: "LevelDatum") -> bool:
        """D <= D': O in O', m O' in m', S contains S'."""
        try:
            LevelLeq(self, other)
        except WitnessInvalid:
            return False
        return True

    def modulus_text(self) -> str:
        return modulus_text(self.modulus, self.places)


def modulus_text(m: FracIdeal, places) -> str:
    gens = _short_generators(m)
    body = ", ".join(str(g) for g in gens)
    return f"({body})" + "".join(f"inf{s}" for s in sorted(places))


def _short_generators(m: FracIdeal) -> list[FieldElement]:
    O = m.order
    K = O.field
    # try the smallest positive rational in m first
    q = None
    for r in range(1, 10 ** 4):
        if m.contains(K(r)):
            q = K(r)
            break
    if q is not None and FracIdeal.generated_by(O, [q]) == m:
        return [q]
    return m.basis


# unit lattices

def _sign_bit(x: FieldElement, place: int) -> int:
    return 0 if x.sign_at(place) > 0 else 1


class _UnitContext:
    """Exponent lattices of unit subgroups for one field."""

    def __init__(self, arith: Arithmetic):
        self.arith = arith
        self.units = arith.units
        self.r = self.units.rank
        self._order_lattices = {}

    def order_units(self, order: Order) -> list[list[int]]:
        """Exponent lattice of O^x inside Z^r."""
        if order in self._order_lattices:
            return self._order_lattices[order]
        OK = self.arith.maximal_order
        r = self.r
        if order == OK:
            L = [[int(i == j) for j in range(r)] for i in range(r)]
        else:
            f = conductor(order, OK)
            R = ResidueRing(OK, f.lattice)
            G = R.unit_group
            sub = subgroup_lattice(G, [i for i in R.coset_reps(order.lattice) if R.unit_mask[i]])
            images = [list(G.dlog(u)) for u in self.units.gens]
            L = _kernel_into_quotient(images, sub, G.invariants)
        self._order_lattices[order] = L
        return L

    def ray_units(self, D: LevelDatum) -> list[list[int]]:
        """Exponent lattice of U_{m,S}(O) = {u in O^x : u = 1 mod m, u > 0 at S}."""
        base = self.order_units(D.order)
        places = sorted(D.places)
        R = ResidueRing(D.order, D.modulus)
        G = R.unit_group
        moduli = list(G.invariants) + [2] * len(places)
        images = []
        for row in base:
            u = self.units.element(row)
            images.append(list(G.dlog(u)) + [_sign_bit(u, s) for s in places])
        if not moduli:
            return base
        coeffs = kernel_mod(images, moduli)
        return hnf([[sum(c[i] * base[i][j] for i in range(len(base))) for j in range(self.r)] for c in coeffs],
                   self.r)


def _kernel_into_quotient(images, sub, invariants):
    """Exponent vectors x with x*images in the subgroup `sub` of prod Z/invariants."""
    k = len(invariants)
    if k == 0:
        r = len(images)
        return [[int(i == j) for j in range(r)] for i in range(r)]
    Q = Cokernel(sub, k)
    proj = [list(Q.project(v)) for v in images]
    r = len(images)
    if not Q.moduli:
        return [[int(i == j) for j in range(r)] for i in range(r)]
    return hnf(kernel_mod(proj, Q.moduli), r)


def _lattice_det(L: Sequence[Sequence[int]]) -> int:
    return abs(det_int(L)) if L else 1


@lru_cache(maxsize=64)
def _unit_context(arith: Arithmetic) -> _UnitContext:
    return _UnitContext(arith)


# the groups

@dataclass
class RayClassGroup:
    level: LevelDatum
    cardinality: int
    structure: FinAbGroup | None
    class_group: FinAbGroup
    residue_units: FinAbGroup
    unit_quotient: FinAbGroup
    cokernel: FinAbGroup
    _ctx: object = dc_field(default=None, repr=False)

    def pieces(self) -> dict:
        return {
            "ring_class": list(self.class_group.invariants),
            "cokernel": list(self.cokernel.invariants),
            "residue_units": list(self.residue_units.invariants),
            "signs": len(self.level.places),
            "unit_quotient": list(self.unit_quotient.invariants),
        }

    def class_of(self, a: FracIdeal):
        return self._ctx.label(a)


class _RayContext:
    """Everything needed to label ideal classes of one level datum."""

    def __init__(self, D: LevelDatum, arith: Arithmetic):
        self.D = D
        self.arith = arith
        self.uc = _unit_context(arith)
        self.R = ResidueRing(D.order, D.modulus)
        self.G = self.R.unit_group
        self.places = sorted(D.places)
        k = len(self.G.invariants)
        s = len(self.places)
        rel = [[d if i == j else 0 for j in range(k + s)] for i, d in enumerate(self.G.invariants)]
        rel += [[2 if j == k + i else 0 for j in range(k + s)] for i in range(s)]
        self.base_units = self.uc.order_units(D.order)
        for row in self.base_units:
            rel.append(self.image(self.uc.units.element(row)))
        self.M = Cokernel(rel, k + s)

    def image(self, gamma: FieldElement) -> list[int]:
        """(discrete log of gamma mod m, sign bits at S) for gamma prime to m."""
        r = residue_of(gamma, self.D.modulus)
        if r is None:
            raise NotCoprime("element is not prime to the modulus")
        try:
            lg = list(self.G.dlog(r))
        except ValueError:
            raise NotCoprime("element is not prime to the modulus") from None
        return lg + [_sign_bit(gamma, s) for s in self.places]

    @cached_property
    def class_reps(self):
        """Invertible ideals coprime to m, one per class of Cl(O), with the Cl(O) data."""
        CG = self.arith.class_group(self.D.order)
        reps = {}
        for key, I in zip(CG.classes, CG.representatives()):
            reps[key] = _coprime_in_class(I, self.D.modulus)
        return CG, reps

    def label(self, a: FracIdeal):
        if a.order != self.D.order:
            raise NotSuborder("ideal is over a different order")
        if not is_coprime(a, self.D.modulus):
            raise NotCoprime("ideal is not coprime to the modulus")
        CG, reps = self.class_reps
        key = CG.key_of(a)
        c = reps[key]
        gamma = self.arith.principal_generator(a * c.inverse())
        if gamma is None:
            raise ArithmeticError("class representative mismatch")
        return (key, self.M.project(self.image(gamma)))


def _coprime_in_class(I: FracIdeal, m: FracIdeal) -> FracIdeal:
    """An integral ideal in the class of I that is coprime to m."""
    O = I.order
    if I.is_integral() and I + m == O.unit_ideal:
        return I
    inv = O.unit_ideal.colon(I)
    b0, b1 = inv.basis[0], inv.basis[1:]
    for size in range(0, 60):
        for coeffs in iproduct(range(-size, size + 1), repeat=len(inv.basis)):
            if max(map(abs, coeffs), default=0) != size:
                continue
            g = sum((c * b for c, b in zip(coeffs, inv.basis)), O.field.zero)
            if g.is_zero():
                continue
            J = I * g
            if J + m == O.unit_ideal:
                return J
    raise ArithmeticError("no coprime representative found")


def ray_class_group(D: LevelDatum, arith: Arithmetic | None = None) -> RayClassGroup:
    """Cardinality (always) and structure (when Cl(O) is trivial) of Cl_{m,S}(O)."""
    arith = arith or arithmetic_for(D.order.field)
    ctx = _RayContext(D, arith)
    ClO = _class_group_of(arith, D.order)
    uq = unit_quotient(D, arith)
    card = ClO.order * ctx.M.order
    structure = ctx.M.group if ClO.is_trivial() else None
    return RayClassGroup(D, card, structure, ClO, ctx.G.group, uq, ctx.M.group, ctx)


def unit_quotient(D: LevelDatum, arith: Arithmetic | None = None) -> FinAbGroup:
    """O^x / U_{m,S}(O)."""
    arith = arith or arithmetic_for(D.order.field)
    uc = _unit_context(arith)
    big = uc.order_units(D.order)
    small = uc.ray_units(D)
    return quotient_structure(big, small).group


@dataclass
class UnitIndex:
    total: int              # [O_K^x : U_{m,S}(O)]
    in_order: int           # [O^x : U_{m,S}(O)]
    order_in_maximal: int   # [O_K^x : O^x]


def unit_index_data(D: LevelDatum, arith: Arithmetic | None = None) -> UnitIndex:
    arith = arith or arithmetic_for(D.order.field)
    uc = _unit_context(arith)
    a = _lattice_det(uc.order_units(D.order))
    b = _lattice_det(uc.ray_units(D))
    return UnitIndex(total=b, in_order=b // a, order_in_maximal=a)


def unit_index(D: LevelDatum, arith: Arithmetic | None = None) -> int:
    """[O_K^x : U_{m,S}(O)]."""
    return unit_index_data(D, arith).total


def _colon_maximal(D: LevelDatum, sup: Order) -> FracIdeal:
    return FracIdeal(sup, lattice_colon(sup.field, D.modulus.lattice, sup.lattice), check=False)


def class_number_terms(D: LevelDatum, arith: Arithmetic | None = None) -> dict:
    """The factors of the class number formula for #Cl_{m,S}(O)."""
    arith = arith or arithmetic_for(D.order.field)
    OK = arith.maximal_order
    hK = _class_group_of(arith, OK).order
    R = ResidueRing(OK, _colon_maximal(D, OK))
    units_OK = R.unit_count()
    units_m = len(R.congruence_units(D.modulus.lattice))
    idx = unit_index(D, arith)
    value = Fraction(hK * 2 ** len(D.places) * units_OK, idx * units_m)
    return {
        "h_K": hK,
        "unit_index": idx,
        "sign_factor": 2 ** len(D.places),
        "residue_units_maximal": units_OK,
        "congruence_units": units_m,
        "value": value,
    }


def ray_class_cardinality_formula(D: LevelDatum, arith: Arithmetic | None = None) -> int:
    value = class_number_terms(D, arith)["value"]
    if value.denominator != 1:
        raise ArithmeticError(f"class number formula gave a non-integer {value}")
    return int(value)


# change of level

@dataclass(frozen=True)
class LevelLeq:
    """A checked comparison D <= D' of level data over the same field."""

    source: LevelDatum
    target: LevelDatum

    def __post_init__(self):
        D, D2 = self.source, self.target
        if D.order.field != D2.order.field:
            raise WitnessInvalid("level data live over different fields")
        if not D.order <= D2.order:
            raise WitnessInvalid("order of the first datum is not contained in the second")
        if not D2.modulus.lattice.contains(extend(D.modulus, D2.order).lattice):
            raise WitnessInvalid("m O' is not contained in m'")
        if not D.places >= D2.places:
            raise WitnessInvalid("real places of the second datum are not a subset of the first")

    def colon(self) -> FracIdeal:
        """(m : O'), the largest admissible auxiliary ideal."""
        return _colon_maximal(self.source, self.target.order)

    def check_aux(self, d: FracIdeal) -> None:
        if d.order != self.target.order:
            raise WitnessInvalid("auxiliary ideal must be an ideal of the larger order")
        if not self.colon().lattice.contains(d.lattice):
            raise WitnessInvalid("auxiliary ideal is not inside (m : O')")


@dataclass
class ExactSequenceReport:
    unit_quotient: FinAbGroup      # U_{m',S'}(O') / U_{m,S}(O)
    middle: FinAbGroup             # U_{m'}(O'/d) / U_m(O/d) x {+-1}^(S - S')
    kernel: FinAbGroup             # middle / image of units = ker(Cl_D -> Cl_D')
    cl_source: int                 # #Cl_D, computed on its own
    cl_target: int                 # #Cl_D', computed on its own
    injective: bool                # the unit map has kernel exactly U_{m,S}(O)

    @property
    def alternating_product(self) -> Fraction:
        return Fraction(self.unit_quotient.order * self.cl_source, self.middle.order * self.cl_target)

    @property
    def ok(self) -> bool:
        return (self.injective and self.alternating_product == 1
                and self.kernel.order * self.cl_target == self.cl_source)


def exact_sequence_report(W: LevelLeq, d: FracIdeal | None = None,
                          arith: Arithmetic | None = None) -> ExactSequenceReport:
    D, D2 = W.source, W.target
    arith = arith or arithmetic_for(D.order.field)
    if d is None:
        d = W.colon()
    W.check_aux(d)
    uc = _unit_context(arith)
    R2 = ResidueRing(D2.order, d)
    G2 = R2.unit_group
    S1 = subgroup_lattice(G2, R2.congruence_units(D2.modulus.lattice))
    S0 = subgroup_lattice(G2, R2.congruence_units(D.modulus.lattice))
    extra = sorted(D.places - D2.places)
    k1 = len(S1)
    width = k1 + len(extra)

    # middle group on coordinates (basis of S1, sign bits)
    rel = []
    S1lat = HNFLattice(1, S1) if S1 else None
    if S1lat is not None:
        rel += [[int(x) for x in S1lat.coords_of(r)] + [0] * len(extra) for r in S0]
    rel += [[2 if j == k1 + i else 0 for j in range(width)] for i in range(len(extra))]
    mid = Cokernel(rel, width).group if width else FinAbGroup(())

    L_small = uc.ray_units(D)
    L_big = uc.ray_units(D2)
    images = []
    for row in L_big:
        u = uc.units.element(row)
        v = [int(x) for x in S1lat.coords_of(list(G2.dlog(u)))] if S1lat is not None else []
        images.append(v + [_sign_bit(u, s) for s in extra])
    if width:
        kern_group = Cokernel(rel + images, width).group
        Mq = Cokernel(rel, width)
        proj = [list(Mq.project(v)) for v in images]
        if Mq.moduli:
            coeffs = kernel_mod(proj, Mq.moduli)
        else:
            coeffs = [[int(i == j) for j in range(len(images))] for i in range(len(images))]
        K1 = hnf([[sum(c[i] * L_big[i][j] for i in range(len(L_big))) for j in range(uc.r)]
                  for c in coeffs], uc.r)
    else:
        kern_group = FinAbGroup(())
        K1 = hnf(L_big, uc.r)
    uq = quotient_structure(L_big, L_small).group
    injective = hnf(L_small, uc.r) == K1
    cl1 = ray_class_group(D, arith).cardinality
    cl2 = ray_class_group(D2, arith).cardinality
    return ExactSequenceReport(uq, mid, kern_group, cl1, cl2, injective)


def ray_class_group_via(W: LevelLeq, d: FracIdeal | None = None,
                        arith: Arithmetic | None = None) -> tuple[int, FinAbGroup | None]:
    """Cardinality and structure of Cl_D from the change of level D <= D'.

    The structure is the unit cokernel, which is the whole group when Cl_D' is trivial.
    """
    rep = exact_sequence_report(W, d, arith)
    card = rep.kernel.order * rep.cl_target
    return card, (rep.kernel if rep.cl_target == 1 else None)


# elements and classes

def principal_ray_member(alpha: FieldElement, D: LevelDatum, aux_d: FracIdeal | None = None) -> bool:
    """alpha = 1 mod* m, positive at every place of S, and (if given) alpha O prime to aux_d."""
    if alpha.is_zero():
        return False
    if aux_d is not None:
        if not is_coprime(FracIdeal.generated_by(D.order, [alpha]), aux_d.with_order(D.order)):
            return False
    if not ray_congruent(alpha, D.modulus):
        return False
    return all(alpha.sign_at(s) > 0 for s in D.places)


def class_extend(W: LevelLeq, a: FracIdeal, arith: Arithmetic | None = None):
    """Label of the class of a O' in Cl_D' for an O-ideal a coprime to m."""
    D, D2 = W.source, W.target
    arith = arith or arithmetic_for(D.order.field)
    if not is_coprime(a, D.modulus):
        raise NotCoprime("ideal is not coprime to the modulus")
    return ray_class_group(D2, arith).class_of(extend(a, D2.order))


def psi_contract_class(p: FracIdeal, D: LevelDatum, arith: Arithmetic | None = None):
    """Label in Cl_D of the contraction of an O_K-ideal prime to (m : O_K)."""
    arith = arith or arithmetic_for(D.order.field)
    OK = arith.maximal_order
    if p.order != OK:
        raise NotSuborder("ideal must be an ideal of the maximal order")
    dm = _colon_maximal(D, OK)
    if not is_coprime(p, dm):
        raise NotCoprime("ideal is not coprime to (m : O_K)")
    con = contract_coprime(p, D.order)
    return ray_class_group(D, arith).class_of(con)


def unit_coset_reps(D: LevelDatum, arith: Arithmetic | None = None) -> list[FieldElement]:
    """Representatives of O^x / U_{m,S}(O)."""
    arith = arith or arithmetic_for(D.order.field)
    uc = _unit_context(arith)
    big = uc.order_units(D.order)
    small = uc.ray_units(D)
    Q = quotient_structure(big, small)
    gens = Q.generator_vectors()
    out = []
    for t in iproduct(*[range(m) for m in Q.moduli]):
        coeff = [0] * len(big)
        for c, g in zip(t, gens):
            coeff = [x + c * y for x, y in zip(coeff, g)]
        exps = [sum(coeff[i] * big[i][j] for i in range(len(big))) for j in range(uc.r)]
        out.append(uc.units.element(exps))
    return out


def is_prime_ideal(p: FracIdeal) -> bool:
    if not p.is_integral() or p == p.order.unit_ideal:
        return False
    return maximal_ideals_containing(p) == [p]


def splits_completely(p: FracIdeal, D: LevelDatum, arith: Arithmetic | None = None) -> str:
    """'yes', 'no' or 'excluded' for a prime of O_K and the level datum D."""
    arith = arith or arithmetic_for(D.order.field)
    OK = arith.maximal_order
    if p.order != OK:
        raise NotSuborder("prime must be an ideal of the maximal order")
    if not is_prime_ideal(p):
        raise NotPrime("ideal is not a prime ideal")
    dm = _colon_maximal(D, OK)
    if not is_coprime(p, dm):
        return "excluded"
    P = contract_integral(p, D.order)
    pi0 = arith.principal_generator(P)
    if pi0 is None:
        return "no"
    for u in unit_coset_reps(D, arith):
        if principal_ray_member(u * pi0, D):
            return "yes"
    return "no"


__all__ = [
    "LevelDatum",
    "LevelLeq",
    "GlobalUnits",
    "Arithmetic",
    "QuadraticArithmetic",
    "SuppliedArithmetic",
    "arithmetic_for",
    "RayClassGroup",
    "ray_class_group",
    "ray_class_group_via",
    "unit_quotient",
    "unit_index",
    "unit_index_data",
    "class_number_terms",
    "ray_class_cardinality_formula",
    "exact_sequence_report",
    "ExactSequenceReport",
    "principal_ray_member",
    "class_extend",
    "psi_contract_class",
    "splits_completely",
    "unit_coset_reps",
    "is_prime_ideal",
    "modulus_text",
]
