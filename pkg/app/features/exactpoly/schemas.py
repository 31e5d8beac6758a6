"""
Types de l'arithmétique exacte.

Anneaux de polynômes sur ℚ (adossés à sympy.polys.rings) et idéaux
finiment engendrés. Les polynômes eux-mêmes sont des PolyElement sympy :
dictionnaires monôme -> coefficient rationnel, sans coefficient nul.
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Tuple

from sympy.polys.domains import QQ
from sympy.polys.orderings import grevlex, lex
from sympy.polys.rings import PolyElement, PolyRing

from app.common.exceptions import RingMismatchError

# Alias de typage
Polynomial = PolyElement
Rational = type(QQ(1))

_ORDERS = {"grevlex": grevlex, "lex": lex}


@dataclass(frozen=True)
class Ring:
    """
    Anneau ℚ[x_1, ..., x_d] d'une carte affine.

    Les noms de variables sont conservés d'une carte à l'autre : la carte
    x_m d'un éclatement réutilise les mêmes symboles.
    """
    variable_names: Tuple[str, ...]
    order: str = "grevlex"

    def __post_init__(self):
        names = tuple(self.variable_names)
        object.__setattr__(self, "variable_names", names)
        if not names:
            raise ValueError("Un anneau doit avoir au moins une variable")
        if len(set(names)) != len(names):
            raise ValueError(f"Noms de variables dupliqués: {names}")
        if self.order not in _ORDERS:
            raise ValueError(f"Ordre monomial inconnu: {self.order}")

    @property
    def dimension(self) -> int:
        return len(self.variable_names)

    @cached_property
    def poly_ring(self) -> PolyRing:
        """Anneau sympy sous-jacent (mis en cache par sympy sur (symboles, domaine, ordre))."""
        return PolyRing(list(self.variable_names), QQ, _ORDERS[self.order])

    @property
    def gens(self) -> Tuple[Polynomial, ...]:
        return tuple(self.poly_ring.gens)

    def gen(self, index: int) -> Polynomial:
        return self.poly_ring.gens[index]

    @property
    def zero(self) -> Polynomial:
        return self.poly_ring.zero

    @property
    def one(self) -> Polynomial:
        return self.poly_ring.one

    def constant(self, value) -> Polynomial:
        return self.poly_ring.ground_new(QQ.convert(value))

    def with_order(self, order: str) -> "Ring":
        return Ring(self.variable_names, order)

    def owns(self, f: Polynomial) -> bool:
        return f.ring == self.poly_ring

    def fresh_name(self, base: str = "t") -> str:
        """Nom de variable absent de l'anneau (variable auxiliaire d'élimination)."""
        name = base
        while name in self.variable_names:
            name = f"{name}_"
        return name

    def __str__(self) -> str:
        return f"QQ[{', '.join(self.variable_names)}]"


@dataclass(frozen=True)
class Ideal:
    """
    Idéal finiment engendré de ℚ[x].

    Les générateurs nuls ne sont jamais stockés ; l'idéal unité est
    représenté par le générateur 1. `basis`, quand il est présent, est une
    base de Gröbner réduite du même idéal (ordre de `ring`).
    """
    ring: Ring
    generators: Tuple[Polynomial, ...] = ()
    basis: Optional[Tuple[Polynomial, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        kept = []
        for g in self.generators:
            if not self.ring.owns(g):
                raise RingMismatchError(str(self.ring), str(g.ring))
            if g:
                kept.append(g)
        object.__setattr__(self, "generators", tuple(kept))

    @classmethod
    def of(cls, ring: Ring, generators: Iterable[Polynomial]) -> "Ideal":
        return cls(ring, tuple(generators))

    @classmethod
    def unit(cls, ring: Ring) -> "Ideal":
        return cls(ring, (ring.one,))

    @classmethod
    def coordinates(cls, ring: Ring, indices: Iterable[int]) -> "Ideal":
        """Idéal ⟨x_i : i ∈ indices⟩ d'un sous-espace de coordonnées."""
        return cls(ring, tuple(ring.gen(i) for i in sorted(set(indices))))

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def text(self) -> str:
        """Forme texte ⟨g1, g2, ...⟩, générateurs dans l'ordre de stockage."""
        from app.features.exactpoly.polynomial import format_polynomial

        return "<" + ", ".join(format_polynomial(g) for g in self.generators) + ">"

    def __str__(self) -> str:
        return self.text()
