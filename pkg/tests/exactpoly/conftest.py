"""
Fixtures pour les tests d'arithmétique exacte.
"""
import random
from typing import List

import pytest

from app.features.exactpoly import Ideal, Polynomial, Ring


def random_polynomial(rng: random.Random, ring: Ring, max_degree: int = 3, max_terms: int = 3) -> Polynomial:
    """Polynôme aléatoire non nul à petits coefficients entiers."""
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            exponents = [0] * ring.dimension
            for _ in range(rng.randint(0, max_degree)):
                exponents[rng.randrange(ring.dimension)] += 1
            terms[tuple(exponents)] = rng.choice([-3, -2, -1, 1, 2, 3])
        f = ring.poly_ring.from_dict(terms)
        if f:
            return f


def random_ideal(rng: random.Random, ring: Ring, max_generators: int = 3) -> Ideal:
    generators: List[Polynomial] = [
        random_polynomial(rng, ring) for _ in range(rng.randint(1, max_generators))
    ]
    return Ideal.of(ring, generators)


@pytest.fixture(scope="module")
def ring_xy() -> Ring:
    """Plan affine ℚ[x, y]."""
    return Ring(("x", "y"))


@pytest.fixture(scope="module")
def ring_xyz() -> Ring:
    """Espace affine ℚ[x, y, z]."""
    return Ring(("x", "y", "z"))


@pytest.fixture(scope="module")
def sum_of_powers_ring() -> Ring:
    """ℚ[x1, y1, z1, w1] (carte x de l'exemple en dimension 4)."""
    return Ring(("x1", "y1", "z1", "w1"))


@pytest.fixture
def rng() -> random.Random:
    """Générateur pseudo-aléatoire à graine fixe."""
    return random.Random(20240611)
