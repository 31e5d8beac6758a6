"""
Types du résolveur

Tours d'objets de base par carte, centres, issues d'une étape et
enregistrements des descentes.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

from app.common.exceptions import HaltReason
from app.features.charts import BasicObjectState, Chart, CoordinateChange
from app.features.exactpoly import Ideal
from app.features.invariants import FdTrace, GammaValue, TValue


class StepKind(str, Enum):
    """Issue de l'évaluation d'une carte."""
    RESOLVED = "resolved"
    MONOMIAL_ENDGAME = "monomialEndgame"
    CASE_A_CENTER = "caseACenter"
    CASE_B_DESCENDED_CENTER = "caseBDescendedCenter"
    HALTED = "halted"


CENTER_KINDS = frozenset({
    StepKind.MONOMIAL_ENDGAME,
    StepKind.CASE_A_CENTER,
    StepKind.CASE_B_DESCENDED_CENTER,
})


@dataclass(frozen=True)
class Center:
    """Centre d'éclatement {x_i = 0 : i ∈ coordinates} d'une carte."""
    coordinates: Tuple[int, ...]
    ideal: Ideal
    depth: int = 0
    labels: Tuple[int, ...] = ()

    @property
    def codimension(self) -> int:
        return len(self.coordinates)

    def text(self) -> str:
        """"H2", "H3∩H4" pour un centre monomial du niveau supérieur, l'idéal sinon."""
        if self.labels and self.depth == 0:
            return "∩".join(f"H{label}" for label in sorted(self.labels))
        return self.ideal.text()


@dataclass(frozen=True)
class Tower:
    """
    Tour d'une carte : niveau 0 = objet de la résolution, niveau e + 1 =
    idéal coefficient du niveau e sur son hyperplan de contact maximal.
    """
    chart_id: int
    levels: Tuple[BasicObjectState, ...]

    @property
    def top(self) -> BasicObjectState:
        return self.levels[0]

    @property
    def depth(self) -> int:
        return len(self.levels)


@dataclass(frozen=True)
class StepOutcome:
    """Décision de l'étape pour une carte."""
    kind: StepKind
    trace: FdTrace
    center: Optional[Center] = None
    halt_reason: Optional[HaltReason] = None
    detail: Optional[str] = None

    def __post_init__(self):
        if (self.center is not None) != (self.kind in CENTER_KINDS):
            raise ValueError(f"Centre incohérent avec l'issue {self.kind.value}")


@dataclass(frozen=True)
class DescentRecord:
    """Une descente : (J″, b″) → (C(J″), b″!) sur {x_hyperplane = 0}."""
    depth: int
    j_double_prime: Ideal
    threshold: int
    hyperplane: int
    flag: Tuple[int, ...]
    coefficient: Ideal
    carried: bool = False
    change: Optional[CoordinateChange] = None


@dataclass(frozen=True)
class LevelRecord:
    """Invariants calculés à un niveau."""
    depth: int
    w_ord: object
    t: Optional[TValue] = None
    gamma: Optional[GammaValue] = None
    e_minus: Tuple[int, ...] = ()
    e_plus: Tuple[int, ...] = ()
    locus: Optional[Ideal] = None


@dataclass(frozen=True)
class ChartEvaluation:
    """
    Évaluation d'une carte à une étape.

    `chart` et `tower` tiennent compte des changements de coordonnées
    appliqués pendant la descente.
    """
    chart: Chart
    tower: Tower
    outcome: StepOutcome
    stage: int
    descents: Tuple[DescentRecord, ...] = ()
    levels: Tuple[LevelRecord, ...] = ()
    monomial_multiplicities: dict = field(default_factory=dict)

    @property
    def key(self) -> tuple:
        return self.outcome.trace.key()
