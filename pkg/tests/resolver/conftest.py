"""
Fixtures pour les tests du résolveur.
"""
import dataclasses
import itertools

import pytest

from app.features.charts import BasicObjectState, Chart, ChartService, ExceptionalDivisor
from app.features.exactpoly import Ideal, Ring


def top_state(chart: Chart, ideal: Ideal, b: int, **kwargs) -> BasicObjectState:
    """Niveau supérieur d'une carte, bord initial = diviseurs initiaux de la carte."""
    initial = frozenset(d.label for d in chart.exceptionals if d.initial)
    return BasicObjectState(chart.id, ideal, b, initial_labels=initial, **kwargs)


def permuted(names, order, build):
    """
    Même problème dans un anneau dont les variables sont réordonnées.

    `build` reçoit un dictionnaire nom -> générateur et rend les générateurs.
    """
    ring = Ring(tuple(names[i] for i in order))
    gens = dict(zip(ring.variable_names, ring.gens))
    return ring, Ideal.of(ring, build(gens))


def permuted_problem(problem, order):
    """
    Problème transporté dans l'anneau aux variables réordonnées par `order`.

    Le bord garde son ordre (donc ses labels), seuls ses indices suivent
    les variables.
    """
    names = problem.ring.variable_names
    ring = Ring(tuple(names[i] for i in order))
    position = {old: new for new, old in enumerate(order)}
    ideal = Ideal.of(ring, [g.set_ring(ring.poly_ring) for g in problem.ideal.generators])
    return dataclasses.replace(
        problem,
        ring=ring,
        ideal=ideal,
        boundary=tuple(position[i] for i in problem.boundary),
        multiplicities={position[i]: a for i, a in problem.multiplicities.items()},
    )


def center_signature(tree) -> list:
    """(étape, chemin des cartes par noms de variables, variables du centre) pour chaque éclatement."""
    names = tree.ring.variable_names
    signature = []
    for node in tree.sorted_nodes():
        if node.center is None or node.center_stage is None:
            continue
        path = tuple(
            names[step.chart.branch_index] for step in tree.path(node.id)[1:]
        )
        center = tuple(sorted(names[i] for i in node.center.coordinates))
        signature.append((node.center_stage, path, center))
    return sorted(signature)


@pytest.fixture(scope="module")
def plane() -> Ring:
    return Ring(("x", "y"))


@pytest.fixture(scope="module")
def space3() -> Ring:
    return Ring(("x", "y", "z"))


@pytest.fixture(scope="module")
def ring3() -> Ring:
    return Ring(("x1", "x2", "x3"))


@pytest.fixture(scope="module")
def ring4() -> Ring:
    return Ring(("x1", "x2", "x3", "x4"))


@pytest.fixture(scope="module")
def quartic_with_boundary(ring4: Ring):
    """(⟨x4² + x3³ + x2·x3² + x1³⟩, 2) avec E = {x3 = 0} (label 1)."""
    x1, x2, x3, x4 = ring4.gens
    chart = Chart.root(0, ring4, (ExceptionalDivisor(1, 2, 0, initial=True),))
    ideal = Ideal.of(ring4, [x4**2 + x3**3 + x2 * x3**2 + x1**3])
    return chart, ideal


@pytest.fixture(scope="module")
def sum_of_powers_surface():
    ring = Ring(("x", "y", "z", "w"))
    x, y, z, w = ring.gens
    ideal = Ideal.of(ring, [x**2 + y**2 + z**2 + w**2, x**6 + y**6 + z**6 + w**6])
    return ring, ideal


@pytest.fixture(scope="module")
def surface_first_chart(sum_of_powers_surface):
    """Carte x de l'éclatement de l'origine et transformée contrôlée J₁."""
    ring, ideal = sum_of_powers_surface
    chart = ChartService.blowup_coordinate_center(Chart.root(0, ring), [0, 1, 2, 3], 0, 1, itertools.count(1))[0]
    controlled = ChartService.controlled_transform(ChartService.total_transform(chart, ideal), 1, 0)
    return chart, controlled
