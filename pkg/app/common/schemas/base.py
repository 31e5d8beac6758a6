"""
Schémas Pydantic de base

Documents JSON de l'arbre de résolution : émission par `model_dump_json`,
relecture par `model_validate_json`. Les rationnels sont des chaînes "p/q".
"""
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class Document(BaseModel):
    """Base des documents : noms camelCase en JSON."""
    model_config = ConfigDict(populate_by_name=True, frozen=True)


# =============================================================================
# NOEUDS
# =============================================================================

class ExceptionalDocument(Document):
    """Diviseur du bord visible dans une carte."""
    label: int
    var: str = Field(..., description="Variable dont le zéro est le diviseur")
    birth: int = Field(..., description="Étape de naissance (0 pour le bord initial)")
    mult: Optional[int] = Field(None, description="Exposant dans la transformée totale (feuilles)")
    center: Optional[str] = Field(None, description="Centre dont le diviseur est issu")
    replaces: Optional[int] = None


class NodeDocument(Document):
    """Carte de l'arbre."""
    id: int
    parent: Optional[int] = None
    stage: int
    vars: List[str]
    substitution: str = Field(..., description="Substitution depuis la carte parente")
    exceptionals: List[ExceptionalDocument] = Field(default_factory=list)
    status: str
    center: Optional[str] = None
    trace: Optional[str] = None
    stop_stage: Optional[int] = Field(None, alias="stopStage")


# =============================================================================
# ETAPES
# =============================================================================

class TDocument(Document):
    w_ord: str = Field(..., alias="wOrd")
    n: int


class GammaDocument(Document):
    codim: int = Field(..., description="Première composante, −codimension")
    weight: str = Field(..., description="Somme des multiplicités / b")
    labels: List[int]


class CenterDocument(Document):
    chart: int
    ideal: str


class StageDocument(Document):
    """Invariant maximal d'une étape et centres éclatés."""
    index: int
    label: int = Field(..., description="Label du diviseur créé")
    max_w_ord: Optional[str] = Field(None, alias="maxWOrd")
    max_t: Optional[TDocument] = Field(None, alias="maxT")
    gamma: Optional[GammaDocument] = None
    fd: str
    centers: List[CenterDocument]


# =============================================================================
# ARBRE
# =============================================================================

class TreeDocument(Document):
    """Arbre complet d'une exécution."""
    task: str
    threshold: int
    vars: List[str]
    nodes: List[NodeDocument]
    stages: List[StageDocument]
    diagnostics: Dict[str, List[int]] = Field(default_factory=dict)
