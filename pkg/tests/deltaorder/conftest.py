"""
Fixtures pour les tests des extensions Δ.
"""
import random

import pytest
import sympy

from app.features.exactpoly import Ideal, Ring


def taylor_order(ideal: Ideal, point) -> int:
    """
    Ordre au point par développement symbolique indépendant (sympy.Expr) :
    translation, expansion, puis plus petit degré total.
    """
    symbols = ideal.ring.poly_ring.symbols
    shift = {
        s: s + sympy.Rational(int(p.numerator), int(p.denominator))
        for s, p in zip(symbols, point)
    }
    orders = []
    for g in ideal.generators:
        expanded = sympy.expand(g.as_expr().subs(shift, simultaneous=True))
        poly = sympy.Poly(expanded, *symbols)
        orders.append(min(sum(m) for m in poly.monoms()))
    return min(orders)


@pytest.fixture(scope="module")
def ring_xy() -> Ring:
    return Ring(("x", "y"))


@pytest.fixture(scope="module")
def ring_xyz() -> Ring:
    return Ring(("x", "y", "z"))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(1913)
