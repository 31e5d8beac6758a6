"""Types du calcul des extensions Δ."""
from dataclasses import dataclass, field
from typing import List

from app.features.exactpoly import Ideal


@dataclass(frozen=True)
class DeltaChain:
    """
    Chaîne [Δ⁰(J), Δ¹(J), ...] arrêtée au premier idéal unité.

    Chaque entrée est stockée sous forme de base de Gröbner réduite.
    """
    base: Ideal
    powers: List[Ideal] = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.powers)

    @property
    def max_order(self) -> int:
        """Plus grand b tel que Δ^{b−1}(J) soit propre."""
        return len(self.powers) - 1

    def power(self, k: int) -> Ideal:
        """Δ^k(J), l'idéal unité au-delà de la fin de la chaîne."""
        if k < len(self.powers):
            return self.powers[k]
        return self.powers[-1]
