"""
Types des drivers

Problème lu depuis un fichier d'entrée et tâches disponibles.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

from app.common.exceptions import InvalidIndexError, ZeroIdealError
from app.features.exactpoly import Ideal, Ring


class Task(str, Enum):
    """Tâche demandée par la ligne `task:`."""
    RESOLVE = "resolve"
    PRINCIPALIZE = "principalize"
    EMBEDDED = "embedded"
    MONOMIAL = "monomial"


@dataclass(frozen=True)
class Problem:
    """
    Problème validé : anneau, idéal, seuil, bord et tâche.

    `multiplicities` associe à chaque indice du bord son exposant a_j
    (tâche monomial uniquement).
    """
    ring: Ring
    ideal: Ideal
    threshold: int = 1
    boundary: Tuple[int, ...] = ()
    task: Task = Task.RESOLVE
    max_stages: Optional[int] = None
    multiplicities: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.ideal.is_zero:
            raise ZeroIdealError("problème")
        if self.threshold < 1:
            raise ValueError(f"Seuil invalide: {self.threshold}")
        for index in self.boundary:
            if not 0 <= index < self.ring.dimension:
                raise InvalidIndexError(index, self.ring.dimension)
        if len(set(self.boundary)) != len(self.boundary):
            raise ValueError(f"Bord avec des indices dupliqués: {self.boundary}")

    @property
    def boundary_names(self) -> Tuple[str, ...]:
        return tuple(self.ring.variable_names[i] for i in self.boundary)
