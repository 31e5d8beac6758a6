"""
Module invariants - Invariants de résolution.

max w-ord, invariant t (partition E⁻/E⁺ du bord), invariant Γ des
objets monomiaux et trace f^d comparée entre cartes.
"""
from app.features.invariants.schemas import (
    FdTrace,
    GammaValue,
    MonomialDivisor,
    MonomialObjectData,
    TraceTerminal,
    TResult,
    TValue,
    WOrdResult,
)
from app.features.invariants.service import InvariantService

__all__ = [
    "FdTrace",
    "GammaValue",
    "InvariantService",
    "MonomialDivisor",
    "MonomialObjectData",
    "TraceTerminal",
    "TResult",
    "TValue",
    "WOrdResult",
]
