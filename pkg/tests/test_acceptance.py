"""Acceptance criteria, one function each; every check prints a PASS/FAIL line.

Run under pytest or directly with ``python3 tests/test_acceptance.py``.
"""

import os
import random
import sys
import time
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from rayorder.field import NumberField
from rayorder.ideals import (
    FracIdeal,
    Order,
    conductor,
    contract_coprime,
    contract_integral,
    extend,
    is_coprime,
    maximal_ideals_containing,
    primary_decomposition,
    primes_up_to,
)
from rayorder.quadratic import QuadraticField, ring_class_group
from rayorder.rayclass import (
    LevelDatum,
    LevelLeq,
    arithmetic_for,
    exact_sequence_report,
    psi_contract_class,
    ray_class_cardinality_formula,
    ray_class_group,
    ray_class_group_via,
    splits_completely,
)

from helpers import elt, field, ideal_gens, lattice_ideal, order_gens, qorder, random_element, random_integral_ideal
from oracles import classical_ray_split, multiplicative_period

SEED = 20240601


def _level(poly, f, m, places=()):
    O = qorder(poly, f)
    return LevelDatum(O, ideal_gens(O, m), frozenset(places))


def _checks(*pairs):
    failed = [name for name, ok in pairs if not ok]
    return not failed, "all checks hold" if not failed else "failed: " + ", ".join(failed)


def crit1():
    t0 = time.perf_counter()
    K = NumberField.from_string("x^2-2")
    O = QuadraticField(K).maximal_order
    G = ray_class_group(LevelDatum(O, FracIdeal.generated_by(O, [K(7)]), frozenset({2})))
    dt = time.perf_counter() - t0
    inv = list(G.structure.invariants)
    return inv == [6] and dt < 1.0, f"invariants {inv}, {dt:.3f}s"


def crit2():
    D = _level("x^2-2", 2, 7, [2])
    OK = qorder("x^2-2")
    direct = ray_class_group(D)
    W = LevelLeq(D, LevelDatum.trivial(OK))
    d = lattice_ideal(OK, "14", "14*a")
    card, struct = ray_class_group_via(W, d)
    routes = (direct.cardinality, list(direct.structure.invariants), card, list(struct.invariants))
    ok = W.colon() == d and routes == (12, [2, 6], 12, [2, 6])
    return ok, f"direct {routes[:2]}, change-of-order {routes[2:]}"


def crit3():
    O5 = qorder("x^2-2", 5)
    D = _level("x^2-2", 5, 7, [2])
    cl = list(ring_class_group(O5).group.invariants)
    formula = ray_class_cardinality_formula(D)
    G = ray_class_group(D)
    ok = cl == [2] and formula == 36 and G.cardinality == 36 and G.structure is None
    return ok, f"Cl {cl}, formula {formula}, direct {G.cardinality}, structure {G.structure}"


def crit4():
    gi = conductor(qorder("x^2+1", 2), qorder("x^2+1")).lattice == ideal_gens(qorder("x^2+1"), 2).lattice
    K = field("x^4-x^2+1")
    w, i = elt(K, "a^2-1"), elt(K, "a^3")
    OK = Order.equation_order(K)
    O = Order.from_generators(K, [K.one, 5 * w, 5 * i, 5 * w * i])
    Op = Order.from_generators(K, [K.one, w, 5 * i, 5 * w * i])
    five = FracIdeal.generated_by(OK, [K(5)]).lattice
    rel = conductor(O, Op)
    biquad = conductor(O, OK).lattice == five and conductor(Op, OK).lattice == five
    relative = rel.lattice == five and not rel.is_invertible()
    formula = all(conductor(qorder(p, 25), qorder(p, 5)).lattice == ideal_gens(qorder(p, 5), 5).lattice
                  for p in ("x^2-2", "x^2+1", "x^2-5", "x^2+3"))
    return _checks(("Z[2i]", gi), ("absolute", biquad), ("relative", relative), ("f/f'", formula))


def crit5():
    O = qorder("x^2+1", 2)
    lat = lambda *g: lattice_ideal(O, *g)
    Q2, q4, q4p, QQ4, Q8 = lat("2", "2*a"), lat("2", "4*a"), lat("4", "2*a"), lat("4", "2+2*a"), lat("4", "4*a")
    norms = [I.norm() for I in (Q2, q4, q4p, QQ4, Q8)]
    flags = [I.is_invertible() for I in (Q2, q4, q4p, QQ4, Q8)]
    return _checks(
        ("norms", norms == [2, 4, 4, 4, 8]),
        ("Nm(Q2^2)", (Q2 * Q2).norm() == 8),
        ("q4+q4'", q4 + q4p == Q2),
        ("squares", q4 * q4 == ideal_gens(O, 4) == q4p * q4p),
        ("q4 q4'", q4 * q4p == lat("8", "4*a")),
        ("flags", flags == [False, True, True, False, False]),
    )


def crit6():
    O = qorder("x^2+1", 2)
    iO = ideal_gens(O, "a")
    K = field("x^3-2")
    C = order_gens(K, "1", "2*a", "2*a^2")
    q = lattice_ideal(C, "2", "2*a", "4*a^2")
    return _checks(
        ("torsion", iO * iO == O.unit_ideal and iO != O.unit_ideal),
        ("ord(q)", q.multiplier_ring() == C),
        ("not invertible", not q.is_invertible()),
    )


def _coprime_pair(rng):
    poly = rng.choice(["x^2-2", "x^2+1", "x^2-5", "x^2+3", "x^2+13", "x^2-x-1", "x^2+x+2"])
    g = rng.choice([1, 2, 3])
    f = g * rng.choice([2, 3, 5])
    O, Op = qorder(poly, f), qorder(poly, g)
    return O, Op, conductor(O, Op)


def crit7():
    rng = random.Random(SEED + 7)
    bad = 0
    for _ in range(200):
        O, Op, fc = _coprime_pair(rng)
        fp = fc.with_order(Op)
        while True:
            a = random_integral_ideal(rng, O, 5, 500)
            if a + fc == O.unit_ideal:
                break
        while True:
            ap = random_integral_ideal(rng, Op, 5, 500)
            if ap + fp == Op.unit_ideal:
                break
        if contract_coprime(extend(a, Op), O) != a or extend(contract_coprime(ap, O), Op) != ap:
            bad += 1
    O25, O5 = qorder("x^2-2", 25), qorder("x^2-2", 5)
    pp = lattice_ideal(O5, "5", "5*a")
    big, small = contract_integral(pp * pp, O25), contract_integral(pp, O25) ** 2
    witness = (big == lattice_ideal(O25, "25", "25*a") and small == lattice_ideal(O25, "25", "125*a")
               and small <= big and small != big)
    O13, OK13 = qorder("x^2+13", 5), qorder("x^2+13")
    m, q = lattice_ideal(O13, "5", "5*a"), ideal_gens(O13, 5)
    imag = contract_integral(extend(q, OK13), O13) == m and q <= m and q != m
    ok, detail = _checks(("round trips", bad == 0), ("con(p'^2) vs con(p')^2", witness), ("sqrt(-13)", imag))
    return ok, f"{200 - bad}/200 round trips; {detail}"


def crit8():
    rng = random.Random(SEED + 8)
    polys = ["x^2-2", "x^2+1", "x^2-5", "x^2+3", "x^2+13", "x^2-x-1", "x^2-3", "x^2+5"]
    bad = 0
    for _ in range(100):
        O = qorder(rng.choice(polys), rng.choice([1, 2, 3, 4, 5, 6]))
        a = random_integral_ideal(rng, O, 30, 10 ** 4)
        comps = primary_decomposition(a)
        prod_, inter = O.unit_ideal, O.unit_ideal
        for _, q in comps:
            prod_, inter = prod_ * q, inter & q
        radicals = [P for P, _ in comps]
        coprime = all(q1 + q2 == O.unit_ideal for i, (_, q1) in enumerate(comps) for _, q2 in comps[i + 1:])
        if not (prod_ == a == inter and len(set(radicals)) == len(radicals) and coprime):
            bad += 1
    return bad == 0, f"{100 - bad}/100 decompositions"


def crit9():
    rng = random.Random(SEED + 9)
    polys = ["x^2-2", "x^2+1", "x^2-5", "x^2+3", "x^2+13", "x^2-x-1"]
    bad = pairs = 0
    while pairs < 500:
        O = qorder(rng.choice(polys), rng.choice([1, 2, 3, 4, 5]))
        a = random_integral_ideal(rng, O, 6, 400)
        if not a.is_invertible():
            continue
        b = random_integral_ideal(rng, O, 6, 400)
        pairs += 1
        bad += (a * b).norm() != a.norm() * b.norm()
    K = field("x^4-x-1")
    Q = order_gens(K, "1", "5*a", "5*a^2", "5*a^3")
    x = lattice_ideal(Q, 5, "5*a", "25*a^2", "25*a^3")
    y = lattice_ideal(Q, 5, "25*a", "5*a^2", "25*a^3")
    marseglia = (x * y).norm() == 5 ** 5 and x.norm() * y.norm() == 5 ** 6
    O2, OK = qorder("x^2+1", 2), qorder("x^2+1")
    t = ideal_gens(O2, "1+a")
    ext_ok = t.is_invertible() and extend(t, OK).norm() == t.norm() == 2
    for _ in range(100):
        O = qorder(rng.choice(polys), rng.choice([2, 3, 5]))
        a = random_integral_ideal(rng, O, 6, 400)
        if a.is_invertible():
            ext_ok &= extend(a, arithmetic_for(O.field).maximal_order).norm() == a.norm()
    ok, detail = _checks(("multiplicative", bad == 0), ("5^5 vs 5^6", marseglia), ("extension", ext_ok))
    return ok, f"{500 - bad}/500 pairs; {detail}"


def _random_triple(rng):
    poly = rng.choice(["x^2-2", "x^2+1"])
    g = rng.choice([1, 1, 2, 3])
    f = g * rng.choice([1, 2, 3, 5])
    O, Op = qorder(poly, f), qorder(poly, g)
    nreal = len(O.field.real_places)
    m = random_integral_ideal(rng, O, 5, 200)
    places = frozenset(s for s in range(1, nreal + 1) if rng.random() < 0.5)
    D = LevelDatum(O, m, places)
    m2 = extend(m, Op)
    if rng.random() < 0.5:
        m2 = m2 + FracIdeal.generated_by(Op, [Op.field(rng.choice([2, 3, 5, 7]))])
    D2 = LevelDatum(Op, m2, frozenset(s for s in places if rng.random() < 0.5))
    W = LevelLeq(D, D2)
    colon = W.colon()
    d = colon if rng.random() < 0.5 else colon * FracIdeal.generated_by(Op, [Op.field(rng.choice([2, 3]))])
    return D, W, d


def crit10():
    rng = random.Random(SEED + 10)
    bad_seq = bad_formula = 0
    for _ in range(50):
        D, W, d = _random_triple(rng)
        rep = exact_sequence_report(W, d)
        bad_seq += not (rep.ok and rep.alternating_product == 1)
        bad_formula += ray_class_cardinality_formula(D) != ray_class_group(D).cardinality
    return bad_seq == bad_formula == 0, f"sequence {50 - bad_seq}/50, formula {50 - bad_formula}/50"


def crit11():
    OK = qorder("x^2-2")
    D = _level("x^2-2", 1, 7, [2])
    G = ray_class_group(D)
    primes = [P for P in primes_up_to(OK, 3000) if P.norm() % 5 and P.norm() % 7]
    labels = {psi_contract_class(P, D) for P in primes}
    tally = {"yes": 0, "no": 0, "excluded": 0}
    for P in primes:
        tally[splits_completely(P, D)] += 1
    dens = Fraction(tally["yes"], tally["yes"] + tally["no"])
    close = abs(dens - Fraction(1, 6)) <= Fraction(8, 100)
    arith = arithmetic_for(OK.field)
    disagree = checked = 0
    for q, places in ((7, (2,)), (7, ()), (7, (1, 2)), (5, (1, 2)), (3, (1,)), (12, (2,))):
        Dq = LevelDatum(OK, ideal_gens(OK, q), frozenset(places))
        period = 2 * multiplicative_period((1, 1), 2, q)
        for P in primes:
            verdict = splits_completely(P, Dq)
            if not is_coprime(P, Dq.modulus):
                disagree += verdict != "excluded"
                continue
            gen = arith.principal_generator(P)
            c = gen.coords
            expected = classical_ray_split((int(c[0]), int(c[1])), 2, (1, 1), q, places, period)
            disagree += verdict != ("yes" if expected else "no")
            checked += 1
    ok = G.cardinality == 6 and len(labels) == 6 and close and disagree == 0
    return ok, (f"{len(primes)} primes, {len(labels)}/6 classes reached, density {float(dens):.4f}, "
                f"classical {checked - disagree}/{checked}")


def crit12():
    rng = random.Random(SEED + 12)
    bad = 0
    for _ in range(100):
        O, Op, fc = _coprime_pair(rng)
        m = random_integral_ideal(rng, O, 5, 400)
        mid = m.colon(FracIdeal(O, Op.unit_ideal.lattice, check=False))
        upper = fc.with_order(Op).lattice.intersect(extend(m, Op).lattice)
        bad += not ((fc * m) <= mid and upper.contains(mid.lattice))
    return bad == 0, f"{100 - bad}/100 instances"


CRITERIA = [crit1, crit2, crit3, crit4, crit5, crit6, crit7, crit8, crit9, crit10, crit11, crit12]


def _line(n, fn):
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure with a reason
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return ok, f"{'PASS' if ok else 'FAIL'} {n}: {detail}"


@pytest.mark.parametrize("n", range(1, len(CRITERIA) + 1))
def test_criterion(n):
    import conftest

    ok, line = _line(n, CRITERIA[n - 1])
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


if __name__ == "__main__":
    results = [_line(n, fn) for n, fn in enumerate(CRITERIA, 1)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
