"""
Module exactpoly - Arithmétique exacte des polynômes et idéaux sur ℚ.

Substrat de tout le moteur : anneaux de cartes, polynômes creux
(sympy.polys.rings), bases de Gröbner, appartenance au radical,
dimension, quotients et saturations.

Usage:
    from app.features.exactpoly import Ring, Ideal, groebner_basis, is_trivial

    ring = Ring(("x", "y"))
    x, y = ring.gens
    ideal = Ideal.of(ring, [x**2 - y**3])
    is_trivial(ideal)  # False
"""
from app.features.exactpoly.ideal import (
    contains,
    contains_ideal,
    groebner_basis,
    ideal_compose,
    ideal_equals,
    ideal_power,
    ideal_product,
    ideal_sum,
    ideal_valuation,
    is_trivial,
    krull_dimension,
    normal_form,
    order_at_rational_point,
    quotient,
    radical_contains,
    radical_membership,
    reduced_generators,
    reduced_power,
    restrict,
    saturate,
    univariate_generator,
)
from app.features.exactpoly.polynomial import (
    coordinate_form,
    coordinate_monomial,
    coordinate_valuation,
    divide_by_coordinate,
    format_polynomial,
    format_rational,
    gcd_multivariate,
    gcd_of,
    lowest_degree,
    monomial,
    order_at_point,
    partial_derivative,
    poly_arith,
    restrict_polynomial,
    square_free_decomposition,
    square_free_part,
    substitute,
    support,
)
from app.features.exactpoly.schemas import Ideal, Polynomial, Rational, Ring

__all__ = [
    "Ring", "Ideal", "Polynomial", "Rational",
    # Polynômes
    "poly_arith", "monomial", "coordinate_monomial", "partial_derivative", "substitute",
    "restrict_polynomial", "coordinate_valuation", "divide_by_coordinate", "lowest_degree",
    "order_at_point", "support", "gcd_multivariate", "gcd_of", "square_free_part",
    "square_free_decomposition", "coordinate_form", "format_polynomial", "format_rational",
    # Idéaux
    "groebner_basis", "reduced_generators", "normal_form", "is_trivial", "contains",
    "contains_ideal", "ideal_equals", "radical_membership", "radical_contains",
    "krull_dimension", "ideal_sum", "ideal_product", "ideal_power", "ideal_compose",
    "reduced_power", "restrict", "quotient", "saturate", "ideal_valuation",
    "order_at_rational_point", "univariate_generator",
]
