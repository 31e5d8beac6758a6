"""
Tests de l'émission texte et JSON de l'arbre.

Execution: python -m pytest tests/drivers/test_emitter.py -v
"""
import json

import pytest

from app.features.drivers import DriverService, emit_json, emit_tree, parse_json, parse_problem, tree_document

from tests.drivers.conftest import CUBIC_WITH_BOUNDARY, CUSP, MONOMIAL_X3Y3, SMOOTH


def run(text: str):
    return DriverService.run(parse_problem(text))


class TestTextEmission:
    """Listing texte."""

    @pytest.mark.golden
    def test_monomial_stages(self):
        lines = emit_tree(run(MONOMIAL_X3Y3), "text").splitlines()
        stages = [line for line in lines if line.startswith("stage ")]

        assert stages[0].startswith("stage 0: Γmax = (-1, 3/2, [2]) center H2")
        assert stages[1].startswith("stage 1: Γmax = (-1, 3/2, [1]) center H1")
        assert stages[2].startswith("stage 2: Γmax = (-2, 1, [4,3]) center H3∩H4")

    def test_divisor_genealogy(self):
        text = emit_tree(run(CUSP), "text")
        assert "divisors:" in text
        assert "H1: born at stage 1 from center <" in text

    def test_initial_boundary_listed(self):
        text = emit_tree(run(MONOMIAL_X3Y3), "text")
        assert "H1: initial, {x = 0}" in text
        assert "H2: initial, {y = 0}" in text

    def test_trace_flag(self):
        tree = run(CUSP)
        assert "fd = " not in emit_tree(tree, "text")
        assert "fd = " in emit_tree(tree, "text", trace=True)

    def test_already_resolved(self):
        text = emit_tree(run(SMOOTH), "text")
        charts = [line for line in text.splitlines() if line.startswith("  chart ")]
        assert len(charts) == 1
        assert charts[0].endswith(": resolved")


class TestJsonEmission:
    """Documents JSON."""

    def test_already_resolved(self):
        data = json.loads(emit_json(run(SMOOTH)))
        assert data["stages"] == []
        assert len(data["nodes"]) == 1
        assert data["nodes"][0]["status"] == "resolved"
        assert data["nodes"][0]["parent"] is None

    def test_rationals_as_strings(self):
        data = json.loads(emit_json(run(CUBIC_WITH_BOUNDARY)))
        assert data["stages"][0]["maxT"] == {"wOrd": "3/2", "n": 1}
        assert data["stages"][0]["maxWOrd"] == "3/2"

    def test_monomial_gamma_and_multiplicities(self):
        data = json.loads(emit_json(run(MONOMIAL_X3Y3)))
        assert data["stages"][0]["gamma"] == {"codim": -1, "weight": "3/2", "labels": [2]}
        leaves = [node for node in data["nodes"] if node["status"] == "resolved"]
        exponents = {
            (e["label"], e["mult"]) for leaf in leaves for e in leaf["exceptionals"] if e["mult"] is not None
        }
        assert exponents == {(3, 1), (4, 1)}

    def test_node_fields(self):
        data = json.loads(emit_json(run(CUSP)))
        assert set(data["nodes"][1]) >= {"id", "parent", "stage", "vars", "substitution", "exceptionals", "status"}
        assert data["nodes"][1]["exceptionals"][0]["var"] in ("x", "y")

    def test_round_trip(self):
        tree = run(CUSP)
        assert parse_json(emit_json(tree)) == tree_document(tree)

    @pytest.mark.parametrize("text", [CUSP, MONOMIAL_X3Y3, CUBIC_WITH_BOUNDARY])
    def test_deterministic(self, text):
        assert emit_tree(run(text), "json") == emit_tree(run(text), "json")
        assert emit_tree(run(text), "text") == emit_tree(run(text), "text")
