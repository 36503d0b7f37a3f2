"""Shared constructors and random generators for the test-suite."""

from __future__ import annotations

import random
from functools import lru_cache

from rayorder.field import NumberField
from rayorder.ideals import FracIdeal, Order
from rayorder.quadratic import QuadraticField

QUAD_POLYS = ["x^2-2", "x^2+1", "x^2-5", "x^2+13", "x^2-3", "x^2+3", "x^2-7", "x^2+5", "x^2-x-1", "x^2+x+2"]


@lru_cache(maxsize=None)
def field(poly: str) -> NumberField:
    return NumberField.from_string(poly)


@lru_cache(maxsize=None)
def quad(poly: str) -> QuadraticField:
    return QuadraticField(field(poly))


@lru_cache(maxsize=None)
def qorder(poly: str, f: int = 1) -> Order:
    return quad(poly).order(f)


def elt(K: NumberField, text: str):
    return K.parse_element(text)


def order_gens(K: NumberField, *texts: str) -> Order:
    return Order.from_generators(K, [K.parse_element(t) for t in texts])


def ideal_gens(O: Order, *texts) -> FracIdeal:
    K = O.field
    return FracIdeal.generated_by(O, [K.parse_element(str(t)) for t in texts])


def lattice_ideal(O: Order, *texts) -> FracIdeal:
    K = O.field
    return FracIdeal.from_lattice_gens(O, [K.parse_element(str(t)) for t in texts])


def random_element(rng: random.Random, O: Order, radius: int = 6):
    while True:
        c = [rng.randint(-radius, radius) for _ in range(O.degree)]
        if any(c):
            return O.from_coords(c)


def random_integral_ideal(rng: random.Random, O: Order, radius: int = 6, max_norm: int | None = None,
                          ngens: int = 2) -> FracIdeal:
    while True:
        a = FracIdeal.generated_by(O, [random_element(rng, O, radius) for _ in range(ngens)])
        if max_norm is None or a.norm() <= max_norm:
            return a
