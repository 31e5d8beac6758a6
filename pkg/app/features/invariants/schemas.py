"""
Types des invariants de résolution

w-ord, invariant t, invariant Γ des objets monomiaux et trace f^d.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from app.features.charts import BasicObjectState
from app.features.exactpoly import Ideal, Rational, format_rational


@dataclass(frozen=True, order=True)
class TValue:
    """Invariant t = (max w-ord, n), ordre lexicographique."""
    w_ord: Rational
    n: int

    def text(self) -> str:
        return f"({format_rational(self.w_ord)}; {self.n})"


@dataclass(frozen=True, order=True)
class GammaValue:
    """
    Invariant Γ = (g1, g2, g3) d'un objet monomial.

    g1 = −(nombre minimal de diviseurs), g2 = somme des multiplicités / b,
    g3 = labels décroissants complétés par des zéros.
    """
    g1: int
    g2: Rational
    g3: Tuple[int, ...]

    @property
    def labels(self) -> Tuple[int, ...]:
        return tuple(label for label in self.g3 if label)

    def as_tuple(self) -> tuple:
        return (self.g1, self.g2, self.g3)

    def text(self) -> str:
        labels = ",".join(str(label) for label in self.labels)
        return f"({self.g1}, {format_rational(self.g2)}, [{labels}])"


@dataclass(frozen=True)
class MonomialDivisor:
    label: int
    coordinate_index: int
    multiplicity: int


@dataclass(frozen=True)
class MonomialObjectData:
    """Objet monomial : J = ∏ I(H_j)^{a_j}, seuil b, dans un ambiant de dimension d."""
    divisors: Tuple[MonomialDivisor, ...]
    threshold: int
    dimension: int

    def __post_init__(self):
        coordinates = [d.coordinate_index for d in self.divisors]
        if len(set(coordinates)) != len(coordinates):
            raise ValueError(f"Coordonnées de diviseurs dupliquées: {coordinates}")

    @property
    def multiplicities(self) -> dict:
        return {d.label: d.multiplicity for d in self.divisors}


class TraceTerminal(str, Enum):
    """Terminal d'une trace f^d."""
    GAMMA = "gamma"
    DIVISOR_MARKER = "infinity"
    RESOLVED = "resolved"


@dataclass(frozen=True)
class FdTrace:
    """
    Trace lexicographique (w-ord, n) par niveau de descente.

    Terminal DIVISOR_MARKER : le dernier niveau a produit un centre de
    codimension un (cas A). Terminal GAMMA : le niveau suivant est monomial.
    """
    levels: Tuple[TValue, ...] = ()
    terminal: TraceTerminal = TraceTerminal.RESOLVED
    gamma: Optional[GammaValue] = None

    def key(self) -> tuple:
        """Clé de comparaison globale entre cartes."""
        if self.terminal == TraceTerminal.RESOLVED:
            return ()
        key: list = []
        if self.terminal == TraceTerminal.DIVISOR_MARKER:
            for value in self.levels[:-1]:
                key.extend((value.w_ord, value.n, 0))
            last = self.levels[-1]
            key.extend((last.w_ord, last.n, 1))
            return tuple(key)
        for value in self.levels:
            key.extend((value.w_ord, value.n, 0))
        key.extend((0, self.gamma.as_tuple()))
        return tuple(key)

    def text(self) -> str:
        if self.terminal == TraceTerminal.RESOLVED:
            return "resolved"
        parts = [value.text() for value in self.levels]
        if self.terminal == TraceTerminal.DIVISOR_MARKER:
            parts.append("∞")
        else:
            gamma = self.gamma
            labels = ",".join(str(label) for label in gamma.labels)
            parts.append(f"Γ({gamma.g1},{format_rational(gamma.g2)},[{labels}])")
        return " ".join(parts)


@dataclass(frozen=True)
class WOrdResult:
    """
    Résultat de max w-ord sur un niveau.

    `locus` a pour zéros Max w-ord ∩ Sing(J, b) ; il est l'idéal unité
    quand w-ord = 0 (cas monomial, `monomial` renseigné).
    """
    w_ord: Rational
    order: int
    weak: Ideal
    multiplicities: Tuple[Tuple[int, int], ...]
    sing_locus: Ideal
    locus: Ideal
    monomial: Optional[MonomialObjectData] = None


@dataclass(frozen=True)
class TResult:
    """Résultat de max t : valeur, composantes de Max t et état mis à jour."""
    value: TValue
    components: Tuple[Ideal, ...]
    locus: Ideal
    state: BasicObjectState
    e_minus: Tuple[int, ...] = ()
    e_plus: Tuple[int, ...] = ()
    subsets: Tuple[Tuple[int, ...], ...] = field(default=())
