"""
Tests des cartes : éclatements, registre des diviseurs, transformées et
changements de coordonnées.

Execution: python -m pytest tests/charts/ -v
"""
import itertools

import pytest

from app.common.exceptions import (
    EngineInvariantError,
    InvalidIndexError,
    NonInvertibleChangeError,
    NotDivisibleError,
)
from app.features.charts import (
    Chart,
    ChartService,
    CoordinateChange,
    ExceptionalDivisor,
    HyperplaneStatus,
    LabelAllocator,
)
from app.features.deltaorder import DeltaOrderService
from app.features.exactpoly import Ideal, Ring, ideal_equals, is_trivial, substitute


class TestLabelAllocator:
    """Tests de LabelAllocator."""

    def test_one_label_per_stage(self):
        allocator = LabelAllocator(first_label=3)
        assert allocator.allocate(0) == 3
        assert allocator.allocate(0) == 3
        assert allocator.allocate(1) == 4
        assert allocator.next_label == 5


class TestBlowup:
    """Tests de blowup_coordinate_center."""

    def test_point_in_plane_x_chart(self, plane_chart: Chart, ids):
        x, y = plane_chart.ring.gens
        children = ChartService.blowup_coordinate_center(plane_chart, [0, 1], 0, 1, ids)
        assert len(children) == 2
        x_chart = children[0]
        assert x_chart.branch_index == 0
        assert x_chart.pullback == (x, x * y)
        assert x_chart.exceptionals == (ExceptionalDivisor(1, 0, 1),)
        assert x_chart.trail[-1].text() == "y -> x*y"

    def test_cusp_y_chart(self, plane_chart: Chart, ids):
        """Dans la carte t = x/y, x² − y³ devient y²(t² − y)."""
        x, y = plane_chart.ring.gens
        cusp = Ideal.of(plane_chart.ring, [x**2 - y**3])
        y_chart = ChartService.blowup_coordinate_center(plane_chart, [0, 1], 0, 1, ids)[1]
        total = ChartService.total_transform(y_chart, cusp)
        assert total.generators == (y**2 * (x**2 - y),)
        controlled = ChartService.controlled_transform(total, 2, 1)
        assert controlled.generators == (x**2 - y,)
        assert is_trivial(DeltaOrderService.order_locus(controlled, 2))

    def test_divisorial_center_relabels(self, plane: Ring, ids):
        """Un centre de codimension un renomme son diviseur."""
        root = Chart.root(0, plane, (ExceptionalDivisor(1, 0, 0, initial=True), ExceptionalDivisor(2, 1, 0, initial=True)))
        (child,) = ChartService.blowup_coordinate_center(root, [1], 0, 3, ids, center_text="H2")
        assert child.pullback == plane.gens
        assert child.divisor(2) is None
        relabeled = child.divisor(3)
        assert relabeled.coordinate_index == 1
        assert relabeled.replaces == 2
        assert relabeled.birth_stage == 1
        assert child.divisor(1).initial

    def test_strict_transforms_kept(self, space4: Ring, ids):
        root = Chart.root(0, space4, (ExceptionalDivisor(1, 3, 0, initial=True),))
        children = ChartService.blowup_coordinate_center(root, [0, 2, 3], 0, 2, ids)
        assert [c.branch_index for c in children] == [0, 2, 3]
        assert children[0].divisor(1).coordinate_index == 3
        assert children[2].divisor(1) is None

    def test_invalid_index(self, plane_chart: Chart, ids):
        with pytest.raises(InvalidIndexError):
            ChartService.blowup_coordinate_center(plane_chart, [0, 5], 0, 1, ids)

    def test_center_pulls_back_to_exceptional(self, space4: Ring, ids):
        """Le centre tiré en arrière découpe l'hyperplan exceptionnel."""
        root = Chart.root(0, space4)
        center = Ideal.coordinates(space4, [0, 1, 3])
        for child in ChartService.blowup_coordinate_center(root, [0, 1, 3], 0, 1, ids):
            pulled = ChartService.total_transform(child, center)
            exceptional = Ideal.coordinates(space4, [child.branch_index])
            assert DeltaOrderService.equal_loci(pulled, exceptional)


class TestStrictTransformHyperplane:
    """Tests de strict_transform_hyperplane."""

    def test_outside_center(self):
        assert ChartService.strict_transform_hyperplane(1, [0, 2], 0) == (HyperplaneStatus.UNCHANGED, 1)

    def test_other_center_coordinate(self):
        """{x₄ = 0} reste {x₄ = 0} quand x₄ ∈ M∖{m}."""
        assert ChartService.strict_transform_hyperplane(3, [0, 2, 3], 0) == (HyperplaneStatus.STRICT_TRANSFORM, 3)

    def test_chart_coordinate(self):
        assert ChartService.strict_transform_hyperplane(0, [0, 2], 0) == (HyperplaneStatus.BECAME_EXCEPTIONAL, None)


class TestControlledTransform:
    """Tests de controlled_transform."""

    def test_square_along_divisor(self, plane: Ring):
        x, _ = plane.gens
        result = ChartService.controlled_transform(Ideal.of(plane, [x**2]), 2, 0)
        assert is_trivial(result)

    def test_dimension_four_first_blowup(self, space4: Ring, ids):
        x, y, z, w = space4.gens
        ideal = Ideal.of(space4, [x**2 + y**2 + z**2 + w**2, x**6 + y**6 + z**6 + w**6])
        x_chart = ChartService.blowup_coordinate_center(Chart.root(0, space4), [0, 1, 2, 3], 0, 1, ids)[0]
        controlled = ChartService.controlled_transform(ChartService.total_transform(x_chart, ideal), 1, 0)
        expected = Ideal.of(space4, [x * (1 + y**2 + z**2 + w**2), x**5 * (1 + y**6 + z**6 + w**6)])
        assert controlled.generators == expected.generators

    def test_not_divisible(self, plane: Ring):
        x, _ = plane.gens
        with pytest.raises(NotDivisibleError):
            ChartService.controlled_transform(Ideal.of(plane, [x]), 2, 0)


class TestWeakTransform:
    """Tests de weak_transform_extract."""

    def test_dimension_four_weak_transform(self, space4: Ring):
        x, y, z, w = space4.gens
        ideal = Ideal.of(space4, [x * (1 + y**2 + z**2 + w**2), x**5 * (1 + y**6 + z**6 + w**6)])
        weak, multiplicities = ChartService.weak_transform_extract(ideal, [(1, 0)])
        assert weak.generators == (1 + y**2 + z**2 + w**2, x**4 * (1 + y**6 + z**6 + w**6))
        assert multiplicities == [(1, 1)]

    def test_no_exceptionals(self, plane: Ring):
        x, y = plane.gens
        ideal = Ideal.of(plane, [x**2 - y**3])
        assert ChartService.weak_transform_extract(ideal, []) == (ideal, [])

    def test_monomial(self, plane: Ring):
        x, y = plane.gens
        weak, multiplicities = ChartService.weak_transform_extract(Ideal.of(plane, [x**3 * y]), [(1, 0), (2, 1)])
        assert is_trivial(weak)
        assert multiplicities == [(1, 3), (2, 1)]

    def test_weak_after_controlled(self, plane_chart: Chart):
        """Contrôlée puis faible = faible du tiré en arrière, multiplicité réduite de b."""
        x, y = plane_chart.ring.gens
        corpus = [x**2 - y**3, x**3 + x * y**2, (x + y)**2 * y, x**4 - y**5]
        for f in corpus:
            ideal = Ideal.of(plane_chart.ring, [f])
            b = DeltaOrderService.max_order(ideal)
            for child in ChartService.blowup_coordinate_center(plane_chart, [0, 1], 0, 1, itertools.count(1)):
                total = ChartService.total_transform(child, ideal)
                m = child.branch_index
                weak_total, (mult_total,) = ChartService.weak_transform_extract(total, [(1, m)])
                controlled = ChartService.controlled_transform(total, b, m)
                weak_controlled, (mult_controlled,) = ChartService.weak_transform_extract(controlled, [(1, m)])
                assert ideal_equals(weak_total, weak_controlled)
                assert mult_controlled[1] == mult_total[1] - b


class TestStrictTransform:
    """Tests de strict_transform."""

    def test_cusp_strict_transform(self, plane_chart: Chart, ids):
        x, y = plane_chart.ring.gens
        cusp = Ideal.of(plane_chart.ring, [x**2 - y**3])
        y_chart = ChartService.blowup_coordinate_center(plane_chart, [0, 1], 0, 1, ids)[1]
        assert ChartService.strict_transform(y_chart, cusp).generators == (x**2 - y,)

    def test_curve_in_space(self, ids):
        """Transformée stricte non principale par saturation."""
        ring = Ring(("x", "y", "z"))
        x, y, z = ring.gens
        curve = Ideal.of(ring, [y - x**2, z - x**3])
        x_chart = ChartService.blowup_coordinate_center(Chart.root(0, ring), [0, 1, 2], 0, 1, ids)[0]
        strict = ChartService.strict_transform(x_chart, curve)
        assert ideal_equals(strict, Ideal.of(ring, [y - x, z - x**2]))


class TestCoordinateChange:
    """Tests de apply_coordinate_change et des inverses."""

    def test_swap(self, plane_chart: Chart):
        x, y = plane_chart.ring.gens
        swap = CoordinateChange.permutation(plane_chart.ring, [1, 0])
        _, (result,) = ChartService.apply_coordinate_change(
            plane_chart, swap, [Ideal.of(plane_chart.ring, [x**2 - y**3])]
        )
        assert result.generators == (y**2 - x**3,)

    def test_triangular_makes_coordinate(self, space4: Ring):
        x, y, z, w = space4.gens
        g = x**2 + y * z
        change = CoordinateChange.triangular(space4, 3, 1, -g)
        chart, (result,) = ChartService.apply_coordinate_change(
            Chart.root(0, space4), change, [Ideal.of(space4, [w + g])]
        )
        assert result.generators == (w,)
        assert chart.trail == (change,)

    def test_identity(self, plane_chart: Chart):
        x, y = plane_chart.ring.gens
        identity = CoordinateChange.affine(plane_chart.ring, [[1, 0], [0, 1]])
        ideal = Ideal.of(plane_chart.ring, [x * y])
        chart, (result,) = ChartService.apply_coordinate_change(plane_chart, identity, [ideal])
        assert chart is plane_chart
        assert result is ideal

    def test_singular_matrix(self, plane: Ring):
        with pytest.raises(NonInvertibleChangeError):
            CoordinateChange.affine(plane, [[1, 1], [2, 2]])

    def test_replacement_with_target(self, plane: Ring):
        x, _ = plane.gens
        with pytest.raises(NonInvertibleChangeError):
            CoordinateChange.triangular(plane, 0, 1, x)

    def test_divisor_must_stay_coordinate(self, plane: Ring):
        x, y = plane.gens
        chart = Chart.root(0, plane, (ExceptionalDivisor(1, 1, 0, initial=True),))
        change = CoordinateChange.triangular(plane, 1, 1, x**2)
        with pytest.raises(EngineInvariantError):
            ChartService.apply_coordinate_change(chart, change, [])

    def test_permutation_moves_divisor(self, plane: Ring):
        chart = Chart.root(0, plane, (ExceptionalDivisor(1, 0, 0, initial=True),))
        swap = CoordinateChange.permutation(plane, [1, 0])
        moved, _ = ChartService.apply_coordinate_change(chart, swap, [])
        assert moved.divisor(1).coordinate_index == 1

    def test_inverse_composes_to_identity(self):
        """Un changement suivi de son inverse fixe les monômes de degré ≤ 3."""
        ring = Ring(("x", "y", "z"))
        x, y, z = ring.gens
        changes = [
            CoordinateChange.triangular(ring, 2, 3, x**2 - y),
            CoordinateChange.affine(ring, [[1, 2, 0], [0, 1, 0], [1, 0, 1]], [1, 0, -2]),
            CoordinateChange.permutation(ring, [2, 0, 1]),
        ]
        monomials = [
            x**a * y**b * z**c
            for a, b, c in itertools.product(range(4), repeat=3)
            if a + b + c <= 3
        ]
        for change in changes:
            forward, backward = change.images(), change.inverse().images()
            for mono in monomials:
                assert substitute(substitute(mono, forward), backward) == mono
