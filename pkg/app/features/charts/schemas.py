"""
Types des cartes affines

Changements de coordonnées, substitutions d'éclatement, diviseurs
exceptionnels, cartes et objets de base attachés à une carte.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Optional, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from app.common.exceptions import NonInvertibleChangeError
from app.features.exactpoly import Ideal, Polynomial, Ring, format_polynomial


class ChangeKind(str, Enum):
    """Nature d'un changement de coordonnées."""
    AFFINE_LINEAR = "affineLinear"
    TRIANGULAR = "triangular"


class HyperplaneStatus(str, Enum):
    """Devenir d'un hyperplan de coordonnées dans une carte d'éclatement."""
    UNCHANGED = "unchanged"  # j ∉ M
    STRICT_TRANSFORM = "strictTransform"  # j ∈ M, j ≠ m
    BECAME_EXCEPTIONAL = "becameExceptional"  # j = m


@dataclass(frozen=True)
class CoordinateChange:
    """
    Automorphisme de ℚ[x] donné par les images des anciennes variables.

    - triangulaire : x_t ↦ scale·x_t + replacement, replacement sans x_t
    - affine : x ↦ A·x + v, A inversible

    Les images expriment les anciennes coordonnées dans les nouvelles.
    """
    kind: ChangeKind
    ring: Ring
    target: Optional[int] = None
    scale: object = None
    replacement: Optional[Polynomial] = None
    matrix: Optional[Tuple[Tuple[object, ...], ...]] = None
    translation: Optional[Tuple[object, ...]] = None

    def __post_init__(self):
        if self.kind == ChangeKind.TRIANGULAR:
            if self.target is None or not QQ.convert(self.scale):
                raise NonInvertibleChangeError("facteur nul sur la variable cible")
            if any(m[self.target] for m in self.replacement.itermonoms()):
                raise NonInvertibleChangeError("le remplacement contient la variable cible")
        else:
            d = self.ring.dimension
            if self.matrix is None or len(self.matrix) != d or any(len(row) != d for row in self.matrix):
                raise NonInvertibleChangeError("matrice de taille incorrecte")
            if not self.domain_matrix().det():
                raise NonInvertibleChangeError("matrice singulière")

    @classmethod
    def triangular(cls, ring: Ring, target: int, scale, replacement: Polynomial) -> "CoordinateChange":
        return cls(ChangeKind.TRIANGULAR, ring, target=target, scale=QQ.convert(scale), replacement=replacement)

    @classmethod
    def affine(cls, ring: Ring, matrix, translation=None) -> "CoordinateChange":
        rows = tuple(tuple(QQ.convert(a) for a in row) for row in matrix)
        shift = tuple(QQ.convert(v) for v in (translation or [0] * ring.dimension))
        return cls(ChangeKind.AFFINE_LINEAR, ring, matrix=rows, translation=shift)

    @classmethod
    def permutation(cls, ring: Ring, order) -> "CoordinateChange":
        """x_i ↦ x_{order[i]}."""
        d = ring.dimension
        rows = [[1 if j == order[i] else 0 for j in range(d)] for i in range(d)]
        return cls.affine(ring, rows)

    def domain_matrix(self) -> DomainMatrix:
        return DomainMatrix([list(row) for row in self.matrix], (len(self.matrix), len(self.matrix)), QQ)

    def images(self) -> Tuple[Polynomial, ...]:
        gens = self.ring.gens
        if self.kind == ChangeKind.TRIANGULAR:
            return tuple(
                gens[i] * self.scale + self.replacement if i == self.target else gens[i]
                for i in range(len(gens))
            )
        return tuple(
            sum((gens[j] * a for j, a in enumerate(row) if a), self.ring.constant(v))
            for row, v in zip(self.matrix, self.translation)
        )

    def inverse(self) -> "CoordinateChange":
        if self.kind == ChangeKind.TRIANGULAR:
            inverse_scale = 1 / self.scale
            return CoordinateChange.triangular(
                self.ring, self.target, inverse_scale, self.replacement * (-inverse_scale)
            )
        inverse = self.domain_matrix().inv()
        rows = [list(r) for r in inverse.to_list()]
        shift = [-sum(a * v for a, v in zip(row, self.translation)) for row in rows]
        return CoordinateChange.affine(self.ring, rows, shift)

    def text(self) -> str:
        names = self.ring.variable_names
        parts = [
            f"{names[i]} -> {format_polynomial(image)}"
            for i, image in enumerate(self.images())
            if image != self.ring.gen(i)
        ]
        return ", ".join(parts) if parts else "id"


@dataclass(frozen=True)
class BlowupSubstitution:
    """Carte m de l'éclatement de centre {x_i = 0 : i ∈ M} : x_j ↦ x_m·x_j pour j ∈ M∖{m}."""
    ring: Ring
    center: Tuple[int, ...]
    chart_index: int
    label: int
    stage: int

    def images(self) -> Tuple[Polynomial, ...]:
        gens = self.ring.gens
        x_m = gens[self.chart_index]
        return tuple(
            gens[j] * x_m if j in self.center and j != self.chart_index else gens[j]
            for j in range(len(gens))
        )

    def text(self) -> str:
        names = self.ring.variable_names
        m = names[self.chart_index]
        parts = [f"{names[j]} -> {m}*{names[j]}" for j in self.center if j != self.chart_index]
        return ", ".join(parts) if parts else "id"


TrailEntry = Union[CoordinateChange, BlowupSubstitution]


@dataclass(frozen=True)
class ExceptionalDivisor:
    """
    Diviseur du bord H_label = {x_coordinate_index = 0} dans une carte.

    birth_stage vaut 0 pour le bord initial, s + 1 pour un diviseur créé
    par l'éclatement de l'étape s. `replaces` indique le label d'un
    diviseur renommé par un centre de codimension un.
    """
    label: int
    coordinate_index: int
    birth_stage: int
    initial: bool = False
    center_text: Optional[str] = None
    replaces: Optional[int] = None


@dataclass(frozen=True)
class Chart:
    """
    Carte affine de la résolution.

    `pullback[k]` est l'image de la k-ième variable d'origine dans les
    coordonnées de la carte (composée de toute la piste).
    """
    id: int
    ring: Ring
    pullback: Tuple[Polynomial, ...]
    parent_id: Optional[int] = None
    branch_index: Optional[int] = None
    stage: int = 0
    trail: Tuple[TrailEntry, ...] = ()
    exceptionals: Tuple[ExceptionalDivisor, ...] = ()
    flag: Tuple[int, ...] = ()

    @classmethod
    def root(cls, chart_id: int, ring: Ring, boundary: Tuple[ExceptionalDivisor, ...] = ()) -> "Chart":
        return cls(id=chart_id, ring=ring, pullback=ring.gens, exceptionals=boundary)

    def divisor(self, label: int) -> Optional[ExceptionalDivisor]:
        return next((d for d in self.exceptionals if d.label == label), None)

    def divisor_at(self, index: int) -> Optional[ExceptionalDivisor]:
        return next((d for d in self.exceptionals if d.coordinate_index == index), None)

    @property
    def divisor_coordinates(self) -> FrozenSet[int]:
        return frozenset(d.coordinate_index for d in self.exceptionals)

    def substitution_text(self) -> str:
        """Dernière entrée de la piste (substitution depuis le parent)."""
        entries = [e.text() for e in self.trail if isinstance(e, BlowupSubstitution)]
        return entries[-1] if entries else "id"


@dataclass(frozen=True)
class BasicObjectState:
    """
    Objet de base (J, b) d'un niveau de la tour d'une carte.

    L'idéal ne dépend pas des variables du drapeau : le niveau vit sur
    {x_f = 0 : f ∈ flag}. `initial_labels` est le bord hérité au moment
    de la création (E pour le niveau supérieur, E⁺ du parent sinon).
    """
    chart_id: int
    ideal: Ideal
    threshold: int
    flag: Tuple[int, ...] = ()
    created_stage: int = 0
    initial_labels: FrozenSet[int] = frozenset()
    max_w_ord_at_last_drop: Optional[object] = None
    drop_stage: int = 0
    last_t: Optional[Tuple[object, int]] = None
    e_minus_labels: FrozenSet[int] = frozenset()
    e_plus_labels: FrozenSet[int] = frozenset()

    @property
    def level(self) -> int:
        """Dimension de l'ambiant du niveau (d moins la profondeur du drapeau)."""
        return self.ideal.ring.dimension - len(self.flag)

    @property
    def depth(self) -> int:
        return len(self.flag)

    def boundary(self, chart: Chart) -> Tuple[ExceptionalDivisor, ...]:
        """Diviseurs du bord de ce niveau visibles dans la carte."""
        return tuple(
            d for d in chart.exceptionals
            if d.coordinate_index not in self.flag
            and (d.label in self.initial_labels or d.birth_stage > self.created_stage)
        )

    def run_born(self, chart: Chart) -> Tuple[ExceptionalDivisor, ...]:
        """Diviseurs nés pendant la suite de ce niveau (extraits du transformé faible)."""
        return tuple(
            d for d in self.boundary(chart)
            if d.birth_stage > self.created_stage and d.label not in self.initial_labels
        )
