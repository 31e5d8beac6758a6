"""
Tests du calcul des extensions Δ, des ordres maximaux et des lieux Sing(J, b).

Execution: python -m pytest tests/deltaorder/ -v
"""
import pytest
from sympy.polys.domains import QQ

from app.common.exceptions import DeltaCapExceededError, ZeroIdealError
from app.features.deltaorder import DeltaOrderService
from app.features.exactpoly import (
    Ideal,
    Ring,
    contains_ideal,
    ideal_equals,
    is_trivial,
    order_at_rational_point,
)
from tests.deltaorder.conftest import taylor_order


class TestDeltaExtend:
    """Tests de delta_extend."""

    def test_square(self, ring_xy: Ring):
        x, _ = ring_xy.gens
        result = DeltaOrderService.delta_extend(Ideal.of(ring_xy, [x**2]))
        assert ideal_equals(result, Ideal.of(ring_xy, [x]))

    def test_cusp(self, ring_xy: Ring):
        x, y = ring_xy.gens
        result = DeltaOrderService.delta_extend(Ideal.of(ring_xy, [x**2 - y**3]))
        assert ideal_equals(result, Ideal.of(ring_xy, [x, y**2]))

    def test_point_gives_unit(self, ring_xy: Ring):
        result = DeltaOrderService.delta_extend(Ideal.of(ring_xy, ring_xy.gens))
        assert is_trivial(result)


class TestDeltaChain:
    """Tests de delta_chain."""

    def test_cusp_chain(self, ring_xy: Ring):
        x, y = ring_xy.gens
        chain = DeltaOrderService.delta_chain(Ideal.of(ring_xy, [x**2 - y**3]))
        assert chain.length == 3
        assert ideal_equals(chain.powers[1], Ideal.of(ring_xy, [x, y**2]))
        assert is_trivial(chain.powers[2])

    def test_unit(self, ring_xy: Ring):
        chain = DeltaOrderService.delta_chain(Ideal.unit(ring_xy))
        assert chain.length == 1

    def test_univariate_power(self, ring_xy: Ring):
        x, _ = ring_xy.gens
        chain = DeltaOrderService.delta_chain(Ideal.of(ring_xy, [x**3]))
        assert [p.generators for p in chain.powers] == [(x**3,), (x**2,), (x,), (ring_xy.one,)]

    def test_nesting(self, ring_xyz: Ring):
        """Chaque Δ^i est contenu dans Δ^{i+1}."""
        x, y, z = ring_xyz.gens
        for ideal in (
            Ideal.of(ring_xyz, [x**2 - y**2 * z]),
            Ideal.of(ring_xyz, [x**3 + y**4, z**2 * y]),
            Ideal.of(ring_xyz, [x * y * z]),
        ):
            chain = DeltaOrderService.delta_chain(ideal)
            for smaller, larger in zip(chain.powers, chain.powers[1:]):
                assert contains_ideal(larger, smaller)

    def test_cap(self, ring_xy: Ring):
        x, y = ring_xy.gens
        with pytest.raises(DeltaCapExceededError):
            DeltaOrderService.delta_chain(Ideal.of(ring_xy, [x**3 * y]), cap=2)

    def test_zero_ideal(self, ring_xy: Ring):
        with pytest.raises(ZeroIdealError):
            DeltaOrderService.delta_chain(Ideal(ring_xy))


class TestMaxOrder:
    """Tests de max_order."""

    def test_cusp(self, ring_xy: Ring):
        x, y = ring_xy.gens
        assert DeltaOrderService.max_order(Ideal.of(ring_xy, [x**2 - y**3])) == 2

    def test_smooth_component(self, ring_xyz: Ring):
        x, y, z = ring_xyz.gens
        assert DeltaOrderService.max_order(Ideal.of(ring_xyz, [x, y * z])) == 1

    def test_unit(self, ring_xy: Ring):
        assert DeltaOrderService.max_order(Ideal.unit(ring_xy)) == 0

    def test_zero(self, ring_xy: Ring):
        with pytest.raises(ZeroIdealError):
            DeltaOrderService.max_order(Ideal(ring_xy))

    @pytest.mark.parametrize("b", range(1, 9))
    def test_characteristic_zero_powers(self, ring_xy: Ring, b: int):
        x, y = ring_xy.gens
        assert DeltaOrderService.max_order(Ideal.of(ring_xy, [x**b])) == b
        assert DeltaOrderService.max_order(Ideal.of(ring_xy, [x**b + y**(b + 1)])) == b

    def test_univariate_fast_path_large_power(self, ring_xyz: Ring):
        """Seuils de l'ordre de 6! traités sans itérer Δ."""
        _, _, z = ring_xyz.gens
        ideal = Ideal.of(ring_xyz, [z**720])
        assert DeltaOrderService.max_order(ideal) == 720
        assert DeltaOrderService.order_locus(ideal, 720).generators == (z,)

    def test_univariate_distinct_roots(self, ring_xy: Ring):
        x, _ = ring_xy.gens
        ideal = Ideal.of(ring_xy, [(x - 1)**3 * (x + 2)**5])
        assert DeltaOrderService.max_order(ideal) == 5
        locus = DeltaOrderService.delta_power(ideal, 3)
        assert ideal_equals(locus, Ideal.of(ring_xy, [(x + 2)**2]))

    @pytest.mark.property
    def test_max_order_matches_sampled_points(self, ring_xy: Ring):
        """Ordre maximal atteint en un point rationnel connu de l'échantillon."""
        x, y = ring_xy.gens
        corpus = [
            (Ideal.of(ring_xy, [x**2 - y**3]), [(0, 0), (1, 1)]),
            (Ideal.of(ring_xy, [x**3 + y**4]), [(0, 0), (2, -1)]),
            (Ideal.of(ring_xy, [(x - 1)**2 * (y + 2)**3]), [(1, -2), (1, 0), (0, -2)]),
            (Ideal.of(ring_xy, [x * y * (x + y)]), [(0, 0), (1, -1)]),
            (Ideal.of(ring_xy, [x**2, y**3 + x * y]), [(0, 0)]),
        ]
        for ideal, points in corpus:
            sampled = max(order_at_rational_point(ideal, p) for p in points)
            assert DeltaOrderService.max_order(ideal) == sampled


class TestOrderLocus:
    """Tests de order_locus et equal_loci."""

    def test_cusp(self, ring_xy: Ring):
        x, y = ring_xy.gens
        locus = DeltaOrderService.order_locus(Ideal.of(ring_xy, [x**2 - y**3]), 2)
        assert ideal_equals(locus, Ideal.of(ring_xy, [x, y**2]))

    def test_threshold_one(self, ring_xyz: Ring):
        x, y, z = ring_xyz.gens
        ideal = Ideal.of(ring_xyz, [x, y * z])
        assert DeltaOrderService.order_locus(ideal, 1) is ideal

    def test_square(self, ring_xy: Ring):
        x, _ = ring_xy.gens
        locus = DeltaOrderService.order_locus(Ideal.of(ring_xy, [x**2]), 2)
        assert ideal_equals(locus, Ideal.of(ring_xy, [x]))

    def test_equal_loci(self, ring_xy: Ring):
        x, y = ring_xy.gens
        assert DeltaOrderService.equal_loci(Ideal.of(ring_xy, [x, y**2]), Ideal.of(ring_xy, [x, y]))
        assert not DeltaOrderService.equal_loci(Ideal.of(ring_xy, [x]), Ideal.of(ring_xy, [y]))
        assert DeltaOrderService.equal_loci(Ideal.unit(ring_xy), Ideal.unit(ring_xy))


@pytest.mark.property
class TestOrderCharacterization:
    """ν_p(I) ≥ b si et seulement si p annule Δ^{b−1}(I)."""

    def _random_case(self, rng, ring: Ring):
        point = tuple(QQ(rng.randint(-2, 2), rng.choice([1, 1, 2])) for _ in range(ring.dimension))
        shifted = [g - QQ.convert(p) for g, p in zip(ring.gens, point)]
        generators = []
        for _ in range(rng.randint(1, 2)):
            f = ring.zero
            for _ in range(rng.randint(1, 3)):
                term = ring.constant(rng.choice([-2, -1, 1, 3]))
                for _ in range(rng.randint(0, 4)):
                    term = term * rng.choice(shifted + list(ring.gens))
                f = f + term
            if f:
                generators.append(f)
        if not generators:
            generators = [shifted[0] ** 2]
        other = tuple(QQ(rng.randint(-2, 2)) for _ in range(ring.dimension))
        return Ideal.of(ring, generators), [point, other]

    def test_two_hundred_random_cases(self, ring_xy: Ring, ring_xyz: Ring, rng):
        checked = 0
        for case in range(220):
            ring = ring_xy if case % 3 else ring_xyz
            ideal, points = self._random_case(rng, ring)
            for point in points:
                expected = taylor_order(ideal, point)
                assert order_at_rational_point(ideal, point) == expected
                for b in (1, 2, 3):
                    locus = DeltaOrderService.order_locus(ideal, b)
                    vanishes = all(g(*point) == 0 for g in locus.generators)
                    assert vanishes == (expected >= b)
                    checked += 1
        assert checked >= 200


class TestJacobian:
    """Tests du critère jacobien."""

    def test_cusp_singular_point(self, ring_xy: Ring):
        x, y = ring_xy.gens
        locus = DeltaOrderService.jacobian_singular_locus(Ideal.of(ring_xy, [x**2 - y**3]), 1)
        assert DeltaOrderService.equal_loci(locus, Ideal.of(ring_xy, [x, y]))

    def test_smooth_curve(self, ring_xyz: Ring):
        x, y, z = ring_xyz.gens
        curve = Ideal.of(ring_xyz, [x - y**2, z - y**3])
        assert is_trivial(DeltaOrderService.jacobian_singular_locus(curve, 2))

    def test_minor_count(self, ring_xyz: Ring):
        x, y, z = ring_xyz.gens
        minors = DeltaOrderService.jacobian_minors(Ideal.of(ring_xyz, [x, y]), 2)
        assert minors == [ring_xyz.one]
