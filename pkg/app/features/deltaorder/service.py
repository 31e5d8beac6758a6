"""
Service du calcul des extensions Δ

Idéaux dérivés, ordre maximal et lieux {ν ≥ b} d'un idéal de ℚ[x].
Un idéal dont les générateurs ne font intervenir qu'une variable est
traité par décomposition sans facteur carré de son générateur : c'est
ce qui rend praticables les seuils b″! élevés des niveaux profonds.
"""
import logging
from functools import lru_cache
from itertools import combinations
from typing import List, Optional

from sympy.polys.matrices import DomainMatrix

from app.common.exceptions import DeltaCapExceededError, ZeroIdealError
from app.core.config import settings
from app.features.deltaorder.schemas import DeltaChain
from app.features.exactpoly import (
    Ideal,
    groebner_basis,
    ideal_sum,
    is_trivial,
    partial_derivative,
    radical_contains,
    square_free_decomposition,
    univariate_generator,
)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=4096)
def _chain(ideal: Ideal, cap: int) -> DeltaChain:
    powers = [groebner_basis(ideal)]
    while not is_trivial(powers[-1]):
        if len(powers) - 1 >= cap:
            raise DeltaCapExceededError(cap)
        powers.append(groebner_basis(DeltaOrderService.delta_extend(powers[-1])))
    logger.debug(f"Chaîne Δ de longueur {len(powers)} pour {ideal}")
    return DeltaChain(base=ideal, powers=powers)


class DeltaOrderService:
    """Extensions Δ, ordres et lieux singuliers."""

    # =========================================================================
    # EXTENSIONS
    # =========================================================================

    @staticmethod
    def delta_extend(ideal: Ideal) -> Ideal:
        """Δ(I) : générateurs de I et toutes leurs dérivées partielles premières."""
        derivatives = [
            partial_derivative(g, i)
            for g in ideal.generators
            for i in range(ideal.ring.dimension)
        ]
        return ideal_sum(ideal, Ideal.of(ideal.ring, derivatives))

    @staticmethod
    def delta_chain(ideal: Ideal, cap: Optional[int] = None) -> DeltaChain:
        """
        Itère Δ jusqu'au premier idéal unité.

        Args:
            ideal: Idéal non nul
            cap: Nombre maximal d'extensions (settings.delta_cap par défaut)

        Raises:
            ZeroIdealError: Si l'idéal est nul
            DeltaCapExceededError: Si la chaîne dépasse le plafond
        """
        if ideal.is_zero:
            raise ZeroIdealError("chaîne Δ d'un idéal nul")
        return _chain(Ideal(ideal.ring, ideal.generators), cap or settings.delta_cap)

    @staticmethod
    def delta_power(ideal: Ideal, k: int) -> Ideal:
        """
        Δ^k(I) directement.

        Pour un idéal univarié ⟨g⟩ avec g = c·∏ p_j^j, Δ^k = ⟨∏_{j>k} p_j^{j−k}⟩.
        """
        if k < 0:
            raise ValueError(f"Puissance Δ invalide: {k}")
        if ideal.is_zero:
            raise ZeroIdealError("Δ d'un idéal nul")
        if k == 0:
            return ideal
        univariate = univariate_generator(ideal)
        if univariate is not None:
            _, g = univariate
            if g.is_ground:
                return Ideal.unit(ideal.ring)
            _, factors = square_free_decomposition(g)
            result = ideal.ring.one
            for p, j in factors:
                if j > k:
                    result = result * p ** (j - k)
            return groebner_basis(Ideal.of(ideal.ring, [result]))
        return DeltaOrderService.delta_chain(ideal).power(k)

    # =========================================================================
    # ORDRES ET LIEUX
    # =========================================================================

    @staticmethod
    def max_order(ideal: Ideal) -> int:
        """
        Ordre maximal de I sur tous les points (y compris non rationnels).

        Returns:
            0 si I est l'idéal unité

        Raises:
            ZeroIdealError: Si l'idéal est nul (ordre non borné)
        """
        if ideal.is_zero:
            raise ZeroIdealError("ordre maximal d'un idéal nul")
        univariate = univariate_generator(ideal)
        if univariate is not None:
            _, g = univariate
            if g.is_ground:
                return 0
            _, factors = square_free_decomposition(g)
            return max(j for _, j in factors)
        return DeltaOrderService.delta_chain(ideal).max_order

    @staticmethod
    def order_locus(ideal: Ideal, b: int) -> Ideal:
        """Δ^{b−1}(I), dont le lieu des zéros est Sing(I, b)."""
        if b < 1:
            raise ValueError(f"Seuil invalide: {b}")
        return DeltaOrderService.delta_power(ideal, b - 1)

    @staticmethod
    def equal_loci(a: Ideal, b: Ideal) -> bool:
        """V(A) = V(B) par appartenance au radical dans les deux sens."""
        return radical_contains(a, b) and radical_contains(b, a)

    # =========================================================================
    # CRITÈRE JACOBIEN
    # =========================================================================

    @staticmethod
    def jacobian_minors(ideal: Ideal, size: int) -> List:
        """Mineurs size×size de la matrice jacobienne des générateurs."""
        ring = ideal.ring
        generators = list(ideal.generators)
        if size <= 0:
            return [ring.one]
        if size > len(generators) or size > ring.dimension:
            return []
        domain = ring.poly_ring.to_domain()
        minors = []
        for rows in combinations(range(len(generators)), size):
            for columns in combinations(range(ring.dimension), size):
                matrix = DomainMatrix(
                    [[partial_derivative(generators[r], c) for c in columns] for r in rows],
                    (size, size),
                    domain,
                )
                determinant = matrix.det()
                if determinant:
                    minors.append(determinant)
        return minors

    @staticmethod
    def jacobian_singular_locus(ideal: Ideal, codimension: int) -> Ideal:
        """
        I + mineurs de taille `codimension` de la jacobienne.

        Pour V(I) de codimension pure c, son lieu des zéros est le lieu
        singulier de V(I) ; il est vide si et seulement si V(I) est lisse.
        """
        minors = DeltaOrderService.jacobian_minors(ideal, codimension)
        return ideal_sum(ideal, Ideal.of(ideal.ring, minors))
