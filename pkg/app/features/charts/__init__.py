"""
Module charts - Cartes affines des éclatements.

Pistes de substitutions, registre des diviseurs exceptionnels et
transformées (totale, contrôlée, faible, stricte) des idéaux.
"""
from app.features.charts.schemas import (
    BasicObjectState,
    BlowupSubstitution,
    ChangeKind,
    Chart,
    CoordinateChange,
    ExceptionalDivisor,
    HyperplaneStatus,
    TrailEntry,
)
from app.features.charts.service import ChartService, LabelAllocator

__all__ = [
    "BasicObjectState",
    "BlowupSubstitution",
    "ChangeKind",
    "Chart",
    "ChartService",
    "CoordinateChange",
    "ExceptionalDivisor",
    "HyperplaneStatus",
    "LabelAllocator",
    "TrailEntry",
]
