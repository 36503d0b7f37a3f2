from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rayorder.errors import NotIrreducible, ParseError
from rayorder.field import NumberField, isolate_real_roots, sign_at

from helpers import field

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_real_roots_of_x2_minus_2():
    K = field("x^2-2")
    assert len(K.real_places) == 2
    # place 1 is the positive root, place 2 the negative one
    P1, P2 = K.place(1), K.place(2)
    for P, sign in ((P1, 1), (P2, -1)):
        while P.hi - P.lo > Fraction(1, 2):
            P.refine()
        assert P.lo * P.lo < 2 < P.hi * P.hi or P.hi * P.hi < 2 < P.lo * P.lo
        assert sign * P.lo >= 0 and sign * P.hi >= 0
    assert 1 <= P1.lo and P1.hi <= 2
    assert -2 <= P2.lo and P2.hi <= -1


def test_cube_root_of_two_has_one_real_place():
    assert len(field("x^3-2").real_places) == 1


def test_quartic_accepted():
    K = NumberField.from_string("x^4 - x - 1")
    assert K.degree == 4
    assert len(K.real_places) == 2


def test_reducible_and_non_monic_rejected():
    with pytest.raises(NotIrreducible):
        NumberField.from_string("x^2-4")
    with pytest.raises(NotIrreducible):
        NumberField.from_string("x^4+4")  # product of two quadratics
    with pytest.raises(NotIrreducible):
        NumberField.from_string("2*x^2-1")


def test_polynomial_syntax_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        NumberField.from_string("x^2 - $")
    assert exc.value.pos == 6


def test_multiplication_examples():
    K = field("x^2-2")
    e = K.parse_element("1+a")
    assert e * e == K.parse_element("3+2*a")
    assert e * K.one == e
    G = field("x^2+1")
    assert G.parse_element("1+a") * G.parse_element("1-a") == G(2)


def test_inverse_examples():
    K = field("x^2-2")
    assert K.parse_element("1+a").inverse() == K.parse_element("-1+a")
    assert K.one.inverse() == K.one
    G = field("x^2+1")
    assert G.gen.inverse() == -G.gen
    with pytest.raises(ZeroDivisionError):
        K.zero.inverse()


def test_sign_examples():
    K = field("x^2-2")
    e = K.parse_element("1+a")
    assert e.sign_at(2) == -1
    assert e.sign_at(1) == 1
    assert sign_at(K.zero, 1) == 0


def test_sign_needs_refinement():
    # 140/99 is within 1e-4 of sqrt 2, so the initial interval cannot decide the sign
    K = field("x^2-2")
    x = K.parse_element("a - 140/99")
    assert x.sign_at(1) == 1
    y = K.parse_element("a - 1414214/1000000")
    assert y.sign_at(1) == -1


@given(st.lists(rationals, min_size=3, max_size=3), st.lists(rationals, min_size=3, max_size=3),
       st.lists(rationals, min_size=3, max_size=3))
def test_field_axioms_cubic(a, b, c):
    K = field("x^3-2")
    x, y, z = (K.element([Fraction(v) for v in t]) for t in (a, b, c))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + y) - y == x
    if not x.is_zero():
        assert x * x.inverse() == K.one


@given(st.lists(rationals, min_size=4, max_size=4))
def test_norm_is_charpoly_constant(c):
    from sympy import Matrix

    K = NumberField.from_string("x^4 - x - 1")
    x = K.element([Fraction(v) for v in c])
    M = Matrix(x.mult_matrix())
    const = M.charpoly().all_coeffs()[-1]
    assert Fraction(str(const)) == (-1) ** K.degree * x.norm()


@given(st.lists(rationals, min_size=2, max_size=2).filter(lambda c: any(c)))
def test_sign_stable_under_refinement(c):
    K = NumberField.from_string("x^2-3")
    x = K.element([Fraction(v) for v in c])
    s1 = [x.sign_at(i) for i in (1, 2)]
    for P in K.real_places:
        for _ in range(5):
            P.refine()
    assert [x.sign_at(i) for i in (1, 2)] == s1
    # floating check well away from zero
    for i, s in zip((1, 2), s1):
        v = x.approx(i)
        if abs(v) > 1e-9:
            assert (v > 0) == (s > 0)


def test_root_isolation_intervals_disjoint():
    roots = isolate_real_roots([1, 0, -7, 0, 1])  # x^4 - 7x^2 + 1, four real roots
    assert len(roots) == 4
    for (a, b), (c, d) in zip(roots, roots[1:]):
        assert b <= c
