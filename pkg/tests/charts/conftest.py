"""
Fixtures pour les tests des cartes.
"""
import itertools

import pytest

from app.features.charts import Chart
from app.features.exactpoly import Ring


@pytest.fixture(scope="module")
def plane() -> Ring:
    """Plan affine ℚ[x, y]."""
    return Ring(("x", "y"))


@pytest.fixture(scope="module")
def space4() -> Ring:
    """ℚ[x, y, z, w]."""
    return Ring(("x", "y", "z", "w"))


@pytest.fixture
def ids():
    """Identifiants de cartes filles."""
    return itertools.count(1)


@pytest.fixture
def plane_chart(plane: Ring) -> Chart:
    return Chart.root(0, plane)
