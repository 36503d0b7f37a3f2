"""Exact arithmetic for orders in number fields: ideals, residue rings, ring and ray class groups."""

from .errors import (
    BoundExceeded,
    ParseError,
    PreconditionError,
    RayOrderError,
)
from .field import FieldElement, NumberField, RealPlace
from .ideals import (
    FracIdeal,
    Order,
    conductor,
    contract_coprime,
    contract_integral,
    extend,
    ideal_colon,
    ideal_intersection,
    ideal_norm,
    ideal_product,
    ideal_sum,
    is_coprime,
    is_invertible,
    maximal_ideals_containing,
    multiplier_ring,
    primary_decomposition,
    primes_up_to,
)
from .kernels import available_backends, default_backend
from .quadratic import QuadraticField, is_principal, ring_class_group
from .rayclass import (
    LevelDatum,
    LevelLeq,
    class_extend,
    exact_sequence_report,
    principal_ray_member,
    psi_contract_class,
    ray_class_cardinality_formula,
    ray_class_group,
    splits_completely,
    unit_index,
)
from .residue import ResidueRing, ray_congruent
from .zmodule import FinAbGroup, HNFLattice, lat_index

__version__ = "0.1.0"
