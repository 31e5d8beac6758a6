"""
Tests des opérations sur les polynômes (arithmétique, dérivées, substitutions, pgcd).

Execution: python -m pytest tests/exactpoly/test_polynomial.py -v
"""
import pytest
from sympy.polys.domains import QQ

from app.common.exceptions import InvalidIndexError, RingMismatchError, ZeroIdealError
from app.features.exactpoly import (
    Ideal,
    Ring,
    coordinate_form,
    coordinate_valuation,
    divide_by_coordinate,
    format_polynomial,
    format_rational,
    gcd_multivariate,
    order_at_point,
    partial_derivative,
    poly_arith,
    square_free_part,
    substitute,
)
from tests.exactpoly.conftest import random_polynomial


class TestRing:
    """Tests du type Ring."""

    def test_dimension(self, ring_xyz: Ring):
        assert ring_xyz.dimension == 3
        assert len(ring_xyz.gens) == 3

    def test_duplicate_names_rejected(self):
        with pytest.raises(ValueError):
            Ring(("x", "x"))

    def test_same_names_share_poly_ring(self):
        """Deux anneaux de mêmes noms partagent l'anneau sympy."""
        assert Ring(("a", "b")).poly_ring == Ring(("a", "b")).poly_ring

    def test_fresh_name_avoids_collisions(self):
        assert Ring(("t", "x")).fresh_name("t") == "t_"

    def test_ideal_drops_zero_generators(self, ring_xy: Ring):
        x, y = ring_xy.gens
        ideal = Ideal.of(ring_xy, [x, x - x, y])
        assert ideal.generators == (x, y)

    def test_ideal_rejects_foreign_polynomial(self, ring_xy: Ring, ring_xyz: Ring):
        with pytest.raises(RingMismatchError):
            Ideal.of(ring_xy, [ring_xyz.gen(2)])


class TestPolyArith:
    """Tests de poly_arith."""

    def test_add_cancellation(self, ring_xy: Ring):
        x, _ = ring_xy.gens
        assert poly_arith("add", x, -x) == 0

    def test_difference_of_squares(self, ring_xy: Ring):
        x, y = ring_xy.gens
        assert poly_arith("mul", x + y, x - y) == x**2 - y**2

    def test_cube(self, ring_xy: Ring):
        x, _ = ring_xy.gens
        assert poly_arith("pow", x + 1, 3) == x**3 + 3*x**2 + 3*x + 1

    def test_pow_matches_repeated_multiplication(self, ring_xy: Ring, rng):
        for _ in range(10):
            f = random_polynomial(rng, ring_xy)
            assert poly_arith("pow", f, 4) == f * f * f * f

    def test_ring_mismatch(self, ring_xy: Ring, ring_xyz: Ring):
        with pytest.raises(RingMismatchError):
            poly_arith("add", ring_xy.gen(0), ring_xyz.gen(0))

    def test_negative_exponent(self, ring_xy: Ring):
        with pytest.raises(ValueError):
            poly_arith("pow", ring_xy.gen(0), -1)


class TestPartialDerivative:
    """Tests de partial_derivative."""

    def test_power_rule(self, ring_xy: Ring):
        x, y = ring_xy.gens
        assert partial_derivative(x**2 - y**3, 1) == -3*y**2

    def test_constant(self, ring_xy: Ring):
        assert partial_derivative(ring_xy.constant(7), 0) == 0

    def test_mixed_monomial(self, ring_xy: Ring):
        x, y = ring_xy.gens
        assert partial_derivative(x**2*y, 0) == 2*x*y

    def test_invalid_index(self, ring_xy: Ring):
        with pytest.raises(InvalidIndexError):
            partial_derivative(ring_xy.gen(0), 2)


class TestSubstitute:
    """Tests de substitute (composition simultanée)."""

    def test_blowup_pullback(self):
        """x ↦ t·y sur x² − y³ donne t²y² − y³."""
        ring = Ring(("t", "y"))
        t, y = ring.gens
        # f écrit dans les variables (x, y) = (t, y) avant substitution
        f = t**2 - y**3
        assert substitute(f, [t * y, y]) == t**2 * y**2 - y**3

    def test_identity(self, ring_xy: Ring, rng):
        f = random_polynomial(rng, ring_xy)
        assert substitute(f, list(ring_xy.gens)) == f

    def test_zero_image(self, ring_xy: Ring):
        x, y = ring_xy.gens
        assert substitute(x + y, [ring_xy.zero, y]) == y

    def test_simultaneous(self, ring_xy: Ring):
        """Les images ne sont pas réinjectées les unes dans les autres."""
        x, y = ring_xy.gens
        assert substitute(x * y**2, [y, x]) == y * x**2

    def test_arity_mismatch(self, ring_xy: Ring):
        with pytest.raises(InvalidIndexError):
            substitute(ring_xy.gen(0), [ring_xy.gen(0)])


class TestValuation:
    """Tests de coordinate_valuation et divide_by_coordinate."""

    def test_polynomial_valuation(self, ring_xy: Ring):
        x, y = ring_xy.gens
        assert coordinate_valuation(x**3*y + x**5, 0) == 3

    def test_additive_under_coordinate_powers(self, ring_xy: Ring, rng):
        x, _ = ring_xy.gens
        for _ in range(20):
            f = random_polynomial(rng, ring_xy)
            k = rng.randint(0, 4)
            assert coordinate_valuation(f * x**k, 0) == coordinate_valuation(f, 0) + k

    def test_zero_polynomial(self, ring_xy: Ring):
        with pytest.raises(ZeroIdealError):
            coordinate_valuation(ring_xy.zero, 0)

    def test_divide_by_coordinate(self, ring_xy: Ring):
        x, y = ring_xy.gens
        assert divide_by_coordinate(x**3*y + x**5, 0, 3) == y + x**2


class TestOrderAtPoint:
    """Tests de order_at_point."""

    def test_cusp_origin(self, ring_xy: Ring):
        x, y = ring_xy.gens
        assert order_at_point(x**2 - y**3, (0, 0)) == 2

    def test_regular_point(self, ring_xy: Ring):
        x, y = ring_xy.gens
        assert order_at_point(x**2 - y**3, (1, 1)) == 1

    def test_unit_at_point(self, ring_xy: Ring):
        x, y = ring_xy.gens
        assert order_at_point(x**2 - y**3, (1, 0)) == 0

    def test_rational_point(self, ring_xy: Ring):
        x, y = ring_xy.gens
        f = (2*x - 1)**3 + (y - QQ(1, 3))**2 * (2*x - 1)
        assert order_at_point(f, (QQ(1, 2), QQ(1, 3))) == 3


class TestGcd:
    """Tests de gcd_multivariate."""

    def test_difference_of_squares(self, ring_xy: Ring):
        x, y = ring_xy.gens
        assert gcd_multivariate(x**2 - y**2, x - y) == x - y

    def test_common_monomial(self, ring_xy: Ring):
        x, y = ring_xy.gens
        assert gcd_multivariate(x**2*y + x*y**2, x*y) == x*y

    def test_coprime(self, ring_xy: Ring):
        x, _ = ring_xy.gens
        assert gcd_multivariate(x + 1, x - 1) == 1

    def test_divides_both_and_cofactors_coprime(self, ring_xyz: Ring, rng):
        """Le pgcd divise exactement et les cofacteurs sont premiers entre eux."""
        for _ in range(15):
            common = random_polynomial(rng, ring_xyz, max_degree=2, max_terms=2)
            f = common * random_polynomial(rng, ring_xyz, max_degree=2)
            g = common * random_polynomial(rng, ring_xyz, max_degree=2)
            h = gcd_multivariate(f, g)
            assert f.rem([h]) == 0 and g.rem([h]) == 0
            assert gcd_multivariate(f.exquo(h), g.exquo(h)) == 1

    def test_both_zero(self, ring_xy: Ring):
        with pytest.raises(ZeroIdealError):
            gcd_multivariate(ring_xy.zero, ring_xy.zero)

    def test_square_free_part(self, ring_xy: Ring):
        x, y = ring_xy.gens
        assert square_free_part(x**2 * y) == x * y


class TestCoordinateForm:
    """Tests de coordinate_form (c·x_j + h)."""

    def test_affine_generator(self, ring_xyz: Ring):
        x, y, z = ring_xyz.gens
        c, h = coordinate_form(2*z + x**2*y, 2)
        assert c == 2
        assert h == x**2*y

    def test_non_constant_coefficient(self, ring_xyz: Ring):
        x, _, z = ring_xyz.gens
        assert coordinate_form(x*z + 1, 2) is None

    def test_quadratic(self, ring_xyz: Ring):
        _, _, z = ring_xyz.gens
        assert coordinate_form(z**2 + z, 2) is None


class TestFormat:
    """Tests de l'affichage canonique."""

    def test_rational(self):
        assert format_rational(QQ(3, 2)) == "3/2"
        assert format_rational(QQ(4, 2)) == "2"
        assert format_rational(0) == "0"

    def test_polynomial_caret(self, ring_xy: Ring):
        x, y = ring_xy.gens
        assert format_polynomial(x**2*y) == "x^2*y"

    def test_ideal_text(self, ring_xy: Ring):
        x, y = ring_xy.gens
        assert Ideal.of(ring_xy, [x, y]).text() == "<x, y>"
