import random

import pytest
from hypothesis import given, settings, strategies as st

from rayorder.errors import DiscTooLarge, NotInvertible, PreconditionError
from rayorder.ideals import FracIdeal, maximal_ideals_containing
from rayorder.quadratic import QuadraticField, class_number_formula, is_principal, ring_class_group

from helpers import elt, field, ideal_gens, lattice_ideal, qorder, quad, random_element, random_integral_ideal
from oracles import imaginary_class_number, pell_unit

seeds = st.integers(0, 2 ** 32 - 1)

REAL = {5: "x^2-x-1", 8: "x^2-2", 12: "x^2-3", 13: "x^2-x-3", 17: "x^2-x-4", 21: "x^2-x-5",
        24: "x^2-6", 28: "x^2-7", 29: "x^2-x-7", 40: "x^2-10", 41: "x^2-x-10", 60: "x^2-15", 61: "x^2-x-15"}
IMAG = {-3: "x^2+x+1", -4: "x^2+1", -7: "x^2+x+2", -20: "x^2+5", -23: "x^2-x+6", -52: "x^2+13",
        -56: "x^2+14", -84: "x^2+21", -47: "x^2-x+12"}


def test_fundamental_unit_of_sqrt2():
    K = field("x^2-2")
    assert quad("x^2-2").fundamental_unit == elt(K, "1+a")


def test_fundamental_unit_golden_ratio():
    Q = quad("x^2-5")
    eps = Q.fundamental_unit
    assert eps == (Q.field.one + Q.sqrt_disc(5)) / 2
    assert eps * eps == eps + 1
    assert eps.norm() == -1


def test_imaginary_fields_have_no_fundamental_unit():
    with pytest.raises(PreconditionError):
        quad("x^2+13").fundamental_unit


@pytest.mark.parametrize("Delta", sorted(REAL))
def test_fundamental_unit_matches_pell_search(Delta):
    Q = quad(REAL[Delta])
    assert Q.disc_fund == Delta
    x, y = pell_unit(Delta)
    expected = (Q.field(x) + y * Q.sqrt_disc(Delta)) / 2
    assert Q.fundamental_unit == expected
    assert abs(expected.norm()) == 1


def test_order_unit_groups():
    Q = quad("x^2-2")
    eps = Q.fundamental_unit
    for f, k in ((1, 1), (2, 2), (5, 3), (7, 6)):
        info = Q.order_unit_group(Q.order(f))
        assert info["torsion"] == (Q.field(-1), 2)
        assert info["exponent"] == k
        assert info["fundamental"] == eps ** k
    gi = quad("x^2+1")
    zeta, w = gi.order_unit_group(gi.maximal_order)["torsion"]
    assert w == 4 and zeta ** 2 == gi.field(-1)
    assert gi.order_unit_group(gi.order(2))["torsion"][1] == 2
    assert quad("x^2+x+1").order_unit_group(quad("x^2+x+1").maximal_order)["torsion"][1] == 6


@pytest.mark.parametrize("f", range(1, 13))
def test_unit_exponent_is_minimal(f):
    Q = quad("x^2-3")
    O = Q.order(f)
    k = Q.unit_index_exponent(O)
    eps = Q.fundamental_unit
    assert O.contains(eps ** k)
    assert all(not O.contains(eps ** j) for j in range(1, k))
    # every power of eps lying in O is a multiple of k
    assert all(O.contains(eps ** j) == (j % k == 0) for j in range(1, 3 * k + 1))


def test_ring_class_group_goldens():
    for f, inv in ((1, ()), (2, ()), (5, (2,))):
        G = ring_class_group(qorder("x^2-2", f))
        assert G.group.invariants == inv


@pytest.mark.parametrize("D", sorted(IMAG))
def test_imaginary_class_numbers_match_form_count(D):
    Q = quad(IMAG[D])
    for f in (1, 2, 3, 5):
        G = ring_class_group(Q.order(f))
        assert G.D == f * f * D
        assert G.class_number == imaginary_class_number(f * f * D)


def test_class_group_structures():
    # classical: Cl(-56) is cyclic of order 4, Cl(-84) is (Z/2)^2
    assert ring_class_group(quad("x^2+14").maximal_order).group.invariants == (4,)
    assert ring_class_group(quad("x^2+21").maximal_order).group.invariants == (2, 2)
    assert ring_class_group(quad("x^2-10").maximal_order).group.invariants == (2,)
    assert ring_class_group(quad("x^2-3").maximal_order).group.invariants == ()


def test_disc_bound():
    with pytest.raises(DiscTooLarge):
        ring_class_group(qorder("x^2-2", 5), bound=100)


@pytest.mark.parametrize("poly", ["x^2-2", "x^2-3", "x^2-5", "x^2+1", "x^2+3", "x^2+5", "x^2-x-3", "x^2+14"])
def test_class_number_formula_agrees(poly):
    Q = quad(poly)
    for f in range(1, 13):
        assert ring_class_group(Q.order(f)).class_number == class_number_formula(Q, f)


def test_is_principal_examples():
    O = qorder("x^2+1", 2)
    K = O.field
    gen = is_principal(lattice_ideal(O, "4", "2*a"))
    assert gen in (elt(K, "2*a"), elt(K, "-2*a"))
    assert is_principal(O.unit_ideal) in (K.one, -K.one)
    m = lattice_ideal(qorder("x^2+13", 5), "5", "5*a")
    assert not m.is_invertible()
    with pytest.raises(NotInvertible):
        is_principal(m)


def test_non_principal_prime_in_conductor_five_order():
    O = qorder("x^2-2", 5)
    G = ring_class_group(O)
    primes = maximal_ideals_containing(ideal_gens(O, 7))
    assert len(primes) == 2
    for P in primes:
        assert (is_principal(P) is None) == (G.key_of(P) != G.one)
    assert any(is_principal(P) is None for P in maximal_ideals_containing(ideal_gens(O, 23)) +
               maximal_ideals_containing(ideal_gens(O, 7)) + maximal_ideals_containing(ideal_gens(O, 17)))


@settings(max_examples=30)
@given(seeds)
def test_is_principal_recovers_generator_up_to_units(seed):
    rng = random.Random(seed)
    poly = rng.choice(["x^2-2", "x^2+1", "x^2-3", "x^2+5", "x^2-x-3", "x^2+14"])
    O = qorder(poly, rng.choice([1, 2, 3, 5]))
    g = random_element(rng, O, 12)
    I = FracIdeal.generated_by(O, [g])
    if not I.is_invertible():
        return
    h = is_principal(I)
    assert h is not None
    u = h / g
    assert O.contains(u) and O.contains(u.inverse())


@settings(max_examples=30)
@given(seeds)
def test_class_dlog_is_a_homomorphism(seed):
    rng = random.Random(seed)
    poly = rng.choice(["x^2+14", "x^2+21", "x^2-10", "x^2+5", "x^2-2"])
    O = qorder(poly, rng.choice([1, 2, 3, 5]))
    G = ring_class_group(O)
    a = random_integral_ideal(rng, O, 8, 2000)
    b = random_integral_ideal(rng, O, 8, 2000)
    if not (a.is_invertible() and b.is_invertible()):
        return
    inv = G.group.invariants
    lhs = G.dlog(a * b)
    rhs = tuple((x + y) % d for x, y, d in zip(G.dlog(a), G.dlog(b), inv))
    assert lhs == rhs
    assert (is_principal(a) is not None) == (not any(G.dlog(a)))


def test_quadratic_field_rejects_other_degrees():
    with pytest.raises(PreconditionError):
        QuadraticField(field("x^3-2"))
