"""
Fixtures pour les tests des invariants.
"""
import itertools

import pytest

from app.features.charts import BasicObjectState, Chart, ChartService, ExceptionalDivisor
from app.features.exactpoly import Ideal, Ring


def top_state(chart: Chart, ideal: Ideal, b: int, **kwargs) -> BasicObjectState:
    """Niveau supérieur d'une carte, bord initial = diviseurs initiaux de la carte."""
    initial = frozenset(d.label for d in chart.exceptionals if d.initial)
    return BasicObjectState(chart.id, ideal, b, initial_labels=initial, **kwargs)


@pytest.fixture(scope="module")
def ring4() -> Ring:
    return Ring(("x1", "x2", "x3", "x4"))


@pytest.fixture(scope="module")
def sum_of_powers_surface():
    """Surface de 𝔸⁴ : ⟨x²+y²+z²+w², x⁶+y⁶+z⁶+w⁶⟩."""
    ring = Ring(("x", "y", "z", "w"))
    x, y, z, w = ring.gens
    ideal = Ideal.of(ring, [x**2 + y**2 + z**2 + w**2, x**6 + y**6 + z**6 + w**6])
    return ring, ideal


@pytest.fixture(scope="module")
def surface_first_chart(sum_of_powers_surface):
    """Carte x de l'éclatement de l'origine et transformée contrôlée J₁ (b = 1)."""
    ring, ideal = sum_of_powers_surface
    chart = ChartService.blowup_coordinate_center(Chart.root(0, ring), [0, 1, 2, 3], 0, 1, itertools.count(1))[0]
    controlled = ChartService.controlled_transform(ChartService.total_transform(chart, ideal), 1, 0)
    return chart, controlled


@pytest.fixture(scope="module")
def quartic_chart(ring4: Ring) -> Chart:
    """Carte de 𝔸⁴ avec bord E = {x3 = 0} (label 1)."""
    return Chart.root(0, ring4, (ExceptionalDivisor(1, 2, 0, initial=True),))
