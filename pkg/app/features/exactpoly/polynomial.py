"""
Opérations sur les polynômes

Arithmétique, dérivées, substitutions, valuations et pgcd sur les
PolyElement sympy à coefficients dans ℚ.
"""
import logging
from typing import Dict, Iterable, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

from app.common.exceptions import InvalidIndexError, RingMismatchError, ZeroIdealError
from app.features.exactpoly.schemas import Polynomial, Rational, Ring

logger = logging.getLogger(__name__)


def _check_index(f: Polynomial, index: int) -> None:
    if not 0 <= index < f.ring.ngens:
        raise InvalidIndexError(index, f.ring.ngens)


def _check_same_ring(a: Polynomial, b: Polynomial) -> None:
    if a.ring != b.ring:
        raise RingMismatchError(str(a.ring), str(b.ring))


# =============================================================================
# Arithmétique
# =============================================================================

def poly_arith(op: str, a: Polynomial, b) -> Polynomial:
    """
    Somme, produit ou puissance exacte.

    Args:
        op: "add", "mul" ou "pow"
        a: Premier opérande
        b: Polynôme du même anneau (add, mul) ou entier naturel (pow)

    Returns:
        Résultat sous forme canonique (aucun coefficient nul)

    Raises:
        RingMismatchError: Si les opérandes viennent d'anneaux différents
        ValueError: Si l'opération est inconnue ou l'exposant négatif
    """
    if op == "pow":
        if not isinstance(b, int) or b < 0:
            raise ValueError(f"Exposant invalide: {b}")
        return a ** b
    _check_same_ring(a, b)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"Opération inconnue: {op}")


def monomial(ring: Ring, exponents: Sequence[int], coefficient=1) -> Polynomial:
    """Monôme c·x^a de l'anneau."""
    if len(exponents) != ring.dimension:
        raise InvalidIndexError(len(exponents), ring.dimension)
    return ring.poly_ring.from_dict({tuple(exponents): QQ.convert(coefficient)})


def coordinate_monomial(ring: Ring, powers: Dict[int, int]) -> Polynomial:
    """Produit ∏ x_i^{k_i} pour un dictionnaire indice -> exposant."""
    exponents = [0] * ring.dimension
    for index, power in powers.items():
        if not 0 <= index < ring.dimension:
            raise InvalidIndexError(index, ring.dimension)
        exponents[index] += power
    return monomial(ring, exponents)


# =============================================================================
# Dérivation et substitution
# =============================================================================

def partial_derivative(f: Polynomial, index: int) -> Polynomial:
    """Dérivée partielle formelle ∂f/∂x_index."""
    _check_index(f, index)
    return f.diff(f.ring.gens[index])


def substitute(f: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """
    Composition simultanée x_i ↦ images[i].

    Args:
        f: Polynôme à transformer
        images: Une image par variable, dans l'anneau de f

    Returns:
        f(images[0], ..., images[d-1])

    Raises:
        InvalidIndexError: Si le nombre d'images ne correspond pas à la dimension
        RingMismatchError: Si une image vit dans un autre anneau
    """
    ring = f.ring
    if len(images) != ring.ngens:
        raise InvalidIndexError(len(images), ring.ngens)
    pairs = []
    for gen, image in zip(ring.gens, images):
        _check_same_ring(f, image)
        if image != gen:
            pairs.append((gen, image))
    if not pairs:
        return f.copy()
    return f.compose(pairs)


def restrict_polynomial(f: Polynomial, indices: Iterable[int]) -> Polynomial:
    """Pose x_i = 0 pour chaque indice donné (suppression des termes concernés)."""
    zeroed = set(indices)
    return f.ring.from_dict({
        monom: coeff for monom, coeff in f.items()
        if not any(monom[i] for i in zeroed)
    })


def shift_to_point(f: Polynomial, point: Sequence) -> Polynomial:
    """Translation de Taylor x ↦ x + p : le point p devient l'origine."""
    ring = f.ring
    if len(point) != ring.ngens:
        raise InvalidIndexError(len(point), ring.ngens)
    images = [gen + QQ.convert(value) for gen, value in zip(ring.gens, point)]
    return substitute(f, images)


# =============================================================================
# Valuations et ordres
# =============================================================================

def coordinate_valuation(f: Polynomial, index: int) -> int:
    """
    Plus grand m tel que x_index^m divise f.

    Raises:
        ZeroIdealError: Si f est nul
    """
    _check_index(f, index)
    if not f:
        raise ZeroIdealError("valuation d'un polynôme nul")
    return min(monom[index] for monom in f.itermonoms())


def divide_by_coordinate(f: Polynomial, index: int, power: int) -> Polynomial:
    """Quotient exact f / x_index^power (le caller garantit la divisibilité)."""
    if power == 0:
        return f.copy()
    terms = {}
    for monom, coeff in f.items():
        reduced = list(monom)
        reduced[index] -= power
        terms[tuple(reduced)] = coeff
    return f.ring.from_dict(terms)


def lowest_degree(f: Polynomial) -> int:
    """Degré total minimal des monômes (ordre à l'origine)."""
    if not f:
        raise ZeroIdealError("ordre d'un polynôme nul")
    return min(sum(monom) for monom in f.itermonoms())


def order_at_point(f: Polynomial, point: Sequence) -> int:
    """Ordre de f au point rationnel p (plus bas degré du développement de Taylor)."""
    if all(QQ.convert(v) == 0 for v in point):
        return lowest_degree(f)
    return lowest_degree(shift_to_point(f, point))


def support(f: Polynomial) -> Tuple[int, ...]:
    """Indices des variables apparaissant effectivement dans f."""
    used = set()
    for monom in f.itermonoms():
        used.update(i for i, e in enumerate(monom) if e)
    return tuple(sorted(used))


# =============================================================================
# Pgcd et formes particulières
# =============================================================================

def gcd_multivariate(f: Polynomial, g: Polynomial) -> Polynomial:
    """
    Pgcd unitaire de deux polynômes.

    Raises:
        ZeroIdealError: Si les deux polynômes sont nuls
    """
    _check_same_ring(f, g)
    if not f and not g:
        raise ZeroIdealError("pgcd de deux polynômes nuls")
    h = f.gcd(g)
    if h.is_ground:
        return f.ring.one
    return h.monic()


def gcd_of(polynomials: Iterable[Polynomial]) -> Optional[Polynomial]:
    """Pgcd d'une famille (None si la famille est vide ou nulle)."""
    result = None
    for p in polynomials:
        if not p:
            continue
        result = p.monic() if result is None else gcd_multivariate(result, p)
        if result.is_ground:
            return result.ring.one
    return result


def square_free_part(f: Polynomial) -> Polynomial:
    """Partie sans facteur carré, unitaire."""
    if f.is_ground:
        return f.ring.one
    return f.sqf_part().monic()


def square_free_decomposition(f: Polynomial) -> Tuple[Rational, list]:
    """Décomposition f = c · ∏ p_k^k, facteurs p_k sans carré deux à deux premiers."""
    coeff, factors = f.sqf_list()
    return coeff, [(p, k) for p, k in factors if not p.is_ground]


def coordinate_form(f: Polynomial, index: int) -> Optional[Tuple[Rational, Polynomial]]:
    """
    Écriture f = c·x_index + h avec c constante non nulle et h sans x_index.

    Returns:
        (c, h) si cette écriture existe, None sinon
    """
    _check_index(f, index)
    gen = f.ring.gens[index]
    derivative = f.diff(gen)
    if not derivative or not derivative.is_ground:
        return None
    c = derivative.LC
    h = f - gen * c
    if any(monom[index] for monom in h.itermonoms()):
        return None
    return c, h


# =============================================================================
# Affichage
# =============================================================================

def format_rational(value) -> str:
    """Forme canonique "p" ou "p/q"."""
    q = QQ.convert(value)
    numerator, denominator = int(q.numerator), int(q.denominator)
    if denominator == 1:
        return str(numerator)
    return f"{numerator}/{denominator}"


def format_polynomial(f: Polynomial) -> str:
    """Texte canonique dans l'ordre monomial de l'anneau, puissances en '^'."""
    return str(f).replace("**", "^")
