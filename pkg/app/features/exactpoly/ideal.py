"""
Opérations sur les idéaux

Bases de Gröbner réduites (sympy.polys.groebnertools), appartenance,
appartenance au radical (astuce de Rabinowitsch), dimension de Krull par
ensembles de variables indépendantes, quotients et saturations par
élimination lexicographique.
"""
import logging
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional, Sequence, Tuple

from sympy.polys.groebnertools import groebner
from sympy.polys.rings import PolyRing

from app.common.exceptions import RingMismatchError, ZeroIdealError
from app.common.metrics import GROEBNER_COUNT
from app.features.exactpoly.polynomial import (
    coordinate_valuation,
    gcd_of,
    order_at_point,
    restrict_polynomial,
    support,
)
from app.features.exactpoly.schemas import Ideal, Polynomial, Ring

logger = logging.getLogger(__name__)


def _check_same_ring(a: Ideal, b: Ideal) -> None:
    if a.ring != b.ring:
        raise RingMismatchError(str(a.ring), str(b.ring))


def _dedupe(polynomials: Iterable[Polynomial]) -> Tuple[Polynomial, ...]:
    seen = {}
    for p in polynomials:
        if p and p not in seen:
            seen[p] = None
    return tuple(seen)


# =============================================================================
# Bases de Gröbner
# =============================================================================

@lru_cache(maxsize=8192)
def _reduced_basis(poly_ring: PolyRing, generators: Tuple[Polynomial, ...]) -> Tuple[Polynomial, ...]:
    GROEBNER_COUNT.labels(order=str(poly_ring.order)).inc()
    logger.debug(f"Base de Gröbner de {len(generators)} générateurs dans {poly_ring}")
    return tuple(groebner(list(generators), poly_ring))


def groebner_basis(ideal: Ideal, order: Optional[str] = None) -> Ideal:
    """
    Base de Gröbner réduite de l'idéal.

    Args:
        ideal: Idéal source
        order: "grevlex" ou "lex" ; par défaut l'ordre de l'anneau de l'idéal

    Returns:
        Idéal dont les générateurs (et `basis`) sont la base réduite,
        unitaire et triée par monôme dominant décroissant
    """
    ring = ideal.ring if order is None or order == ideal.ring.order else ideal.ring.with_order(order)
    if ideal.basis is not None and ring == ideal.ring:
        return ideal
    generators = tuple(g.set_ring(ring.poly_ring) for g in ideal.generators)
    if not generators:
        return Ideal(ring, (), basis=())
    basis = _reduced_basis(ring.poly_ring, generators)
    return Ideal(ring, basis, basis=basis)


def reduced_generators(ideal: Ideal) -> Tuple[Polynomial, ...]:
    """Générateurs de la base réduite dans l'ordre de l'anneau."""
    return groebner_basis(ideal).generators


def normal_form(f: Polynomial, ideal: Ideal) -> Polynomial:
    """Reste de la division de f par la base réduite."""
    basis = reduced_generators(ideal)
    if not basis:
        return f
    return f.rem(list(basis))


def is_trivial(ideal: Ideal) -> bool:
    """Vrai si 1 ∈ I (base réduite égale à {1})."""
    if ideal.is_zero:
        return False
    if any(g.is_ground for g in ideal.generators):
        return True
    return any(g.is_ground for g in reduced_generators(ideal))


def contains(ideal: Ideal, f: Polynomial) -> bool:
    """Appartenance f ∈ I par forme normale."""
    if not f:
        return True
    if ideal.is_zero:
        return False
    return not normal_form(f, ideal)


def contains_ideal(ideal: Ideal, other: Ideal) -> bool:
    """Inclusion other ⊆ ideal."""
    _check_same_ring(ideal, other)
    return all(contains(ideal, g) for g in other.generators)


def ideal_equals(a: Ideal, b: Ideal) -> bool:
    """Égalité d'idéaux par comparaison des bases réduites."""
    _check_same_ring(a, b)
    return reduced_generators(a) == reduced_generators(b)


# =============================================================================
# Radical et lieux
# =============================================================================

def _extended_ring(ring: Ring, first: bool = False, order: Optional[str] = None) -> Tuple[Ring, Polynomial]:
    """Anneau augmenté d'une variable fraîche t (en tête si `first`)."""
    name = ring.fresh_name("t")
    names = (name,) + ring.variable_names if first else ring.variable_names + (name,)
    extended = Ring(names, order or ring.order)
    return extended, extended.gen(0 if first else extended.dimension - 1)


def radical_membership(f: Polynomial, ideal: Ideal) -> bool:
    """
    f s'annule-t-il sur V(I) (sur la clôture algébrique) ?

    Teste la trivialité de I + ⟨1 − t·f⟩ dans l'anneau augmenté de t.
    """
    if not f:
        return True
    if f.is_ground:
        return is_trivial(ideal)
    extended, t = _extended_ring(ideal.ring)
    generators = [g.set_ring(extended.poly_ring) for g in ideal.generators]
    generators.append(extended.one - t * f.set_ring(extended.poly_ring))
    return is_trivial(Ideal(extended, tuple(generators)))


def radical_contains(ideal: Ideal, other: Ideal) -> bool:
    """V(ideal) ⊆ V(other) : chaque générateur de other est dans rad(ideal)."""
    _check_same_ring(ideal, other)
    return all(radical_membership(g, ideal) for g in other.generators)


def krull_dimension(ideal: Ideal) -> int:
    """
    Dimension de V(I) par le plus grand ensemble de variables indépendant
    modulo l'idéal des monômes dominants.

    Returns:
        -1 pour l'idéal unité, d pour l'idéal nul
    """
    d = ideal.ring.dimension
    if ideal.is_zero:
        return d
    basis = reduced_generators(ideal)
    if any(g.is_ground for g in basis):
        return -1
    leading = [tuple(i for i, e in enumerate(g.LM) if e) for g in basis]
    for size in range(d, -1, -1):
        for subset in combinations(range(d), size):
            chosen = set(subset)
            if not any(set(lm) <= chosen for lm in leading):
                return size
    return 0


# =============================================================================
# Composition d'idéaux
# =============================================================================

def ideal_sum(*ideals: Ideal) -> Ideal:
    ring = ideals[0].ring
    for other in ideals[1:]:
        _check_same_ring(ideals[0], other)
    return Ideal(ring, _dedupe(g for ideal in ideals for g in ideal.generators))


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    _check_same_ring(a, b)
    return Ideal(a.ring, _dedupe(f * g for f in a.generators for g in b.generators))


def ideal_power(ideal: Ideal, exponent: int) -> Ideal:
    """Puissance au niveau des générateurs (produits de multiensembles, sans réduction)."""
    if exponent < 1:
        raise ValueError(f"Exposant invalide: {exponent}")
    result = ideal
    for _ in range(exponent - 1):
        result = ideal_product(result, ideal)
    return result


def ideal_compose(op: str, a: Ideal, b) -> Ideal:
    """
    Somme, produit ou puissance d'idéaux au niveau des générateurs.

    Args:
        op: "sum", "product" ou "power"
        a: Premier idéal
        b: Idéal du même anneau (sum, product) ou entier ≥ 1 (power)
    """
    if op == "sum":
        return ideal_sum(a, b)
    if op == "product":
        return ideal_product(a, b)
    if op == "power":
        return ideal_power(a, b)
    raise ValueError(f"Opération inconnue: {op}")


def reduced_power(ideal: Ideal, exponent: int) -> Ideal:
    """
    Puissance I^k par exponentiation binaire, chaque étape réduite par
    une base de Gröbner (utilisé pour les grands exposants b!/(b−i)).
    """
    if exponent < 1:
        raise ValueError(f"Exposant invalide: {exponent}")
    base = groebner_basis(ideal)
    result: Optional[Ideal] = None
    while True:
        if exponent & 1:
            result = base if result is None else groebner_basis(ideal_product(result, base))
        exponent >>= 1
        if not exponent:
            return result
        base = groebner_basis(ideal_product(base, base))


def restrict(ideal: Ideal, indices: Iterable[int]) -> Ideal:
    """Restriction aux hyperplans x_i = 0 (générateurs nuls éliminés)."""
    zeroed = tuple(indices)
    return Ideal(ideal.ring, _dedupe(restrict_polynomial(g, zeroed) for g in ideal.generators))


def _eliminate_first(extended: Ring, generators: Sequence[Polynomial], target: Ring) -> Tuple[Polynomial, ...]:
    """Éléments sans la variable de tête d'une base lex, ramenés dans `target`."""
    basis = groebner_basis(Ideal(extended, tuple(generators)))
    kept = [g for g in basis.generators if not any(m[0] for m in g.itermonoms())]
    return tuple(g.set_ring(target.poly_ring) for g in kept)


def quotient(ideal: Ideal, f: Polynomial) -> Ideal:
    """
    Quotient I : f = (I ∩ ⟨f⟩) / f.

    L'intersection est obtenue en éliminant t de t·I + (1 − t)·⟨f⟩.
    """
    if not f:
        raise ZeroIdealError("quotient par un polynôme nul")
    if ideal.is_zero:
        return ideal
    extended, t = _extended_ring(ideal.ring, first=True, order="lex")
    lift = extended.poly_ring
    generators = [t * g.set_ring(lift) for g in ideal.generators]
    generators.append((extended.one - t) * f.set_ring(lift))
    lex_ring = ideal.ring.with_order("lex")
    intersection = _eliminate_first(extended, generators, lex_ring)
    quotients = [g.exquo(f.set_ring(lex_ring.poly_ring)).set_ring(ideal.ring.poly_ring) for g in intersection]
    return groebner_basis(Ideal(ideal.ring, _dedupe(quotients)))


def saturate(ideal: Ideal, f: Polynomial) -> Ideal:
    """Saturation I : f^∞ = (I + ⟨1 − t·f⟩) ∩ ℚ[x]."""
    if not f:
        raise ZeroIdealError("saturation par un polynôme nul")
    if ideal.is_zero or f.is_ground:
        return ideal
    extended, t = _extended_ring(ideal.ring, first=True, order="lex")
    lift = extended.poly_ring
    generators = [g.set_ring(lift) for g in ideal.generators]
    generators.append(extended.one - t * f.set_ring(lift))
    eliminated = _eliminate_first(extended, generators, ideal.ring)
    return groebner_basis(Ideal(ideal.ring, _dedupe(eliminated)))


# =============================================================================
# Valuations et ordres
# =============================================================================

def ideal_valuation(ideal: Ideal, index: int) -> int:
    """
    Ordre de I au point générique de {x_index = 0} : minimum des valuations
    des générateurs ; 0 pour un idéal contenant une constante.

    Raises:
        ZeroIdealError: Si l'idéal est nul
    """
    if ideal.is_zero:
        raise ZeroIdealError("valuation d'un idéal nul")
    return min(coordinate_valuation(g, index) for g in ideal.generators)


def order_at_rational_point(ideal: Ideal, point: Sequence) -> int:
    """
    Ordre ν_p(I) : minimum sur les générateurs du plus bas degré de Taylor.

    Raises:
        ZeroIdealError: Si l'idéal n'a aucun générateur
    """
    if ideal.is_zero:
        raise ZeroIdealError("ordre d'un idéal nul")
    return min(order_at_point(g, point) for g in ideal.generators)


# =============================================================================
# Cas univarié
# =============================================================================

def univariate_generator(ideal: Ideal) -> Optional[Tuple[Optional[int], Polynomial]]:
    """
    Si tous les générateurs ne font intervenir qu'une même variable x_i,
    l'idéal est principal engendré par leur pgcd.

    Returns:
        (i, g) avec g unitaire (i = None si g est constant), ou None si
        l'idéal n'est pas univarié
    """
    if ideal.is_zero:
        return None
    variables = set()
    for g in ideal.generators:
        variables.update(support(g))
        if len(variables) > 1:
            return None
    g = gcd_of(ideal.generators)
    if g.is_ground:
        return None, ideal.ring.one
    return next(iter(variables)), g
