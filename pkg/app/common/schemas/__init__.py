"""
Schemas Pydantic - Exports
"""
from app.common.schemas.base import (
    CenterDocument,
    Document,
    ExceptionalDocument,
    GammaDocument,
    NodeDocument,
    StageDocument,
    TDocument,
    TreeDocument,
)

__all__ = [
    "CenterDocument",
    "Document",
    "ExceptionalDocument",
    "GammaDocument",
    "NodeDocument",
    "StageDocument",
    "TDocument",
    "TreeDocument",
]
