"""
Module resolver - Moteur de désingularisation constructive.

Tours d'objets de base par carte, cas A (centre de codimension un du lieu
Max t), cas B (descente par contact maximal et idéal coefficient), fin de
partie monomiale et boucle globale par étapes.

Usage:
    from app.features.resolver import resolve_basic_object

    tree = resolve_basic_object(ring, ideal, threshold=2)
    [summary.trace.text() for summary in tree.stages]
"""
from app.features.resolver.engine import ResolutionEngine, leaf_exponents, resolve_basic_object, root_chart
from app.features.resolver.monomial import MonomialEndgame, child_multiplicities, monomial_endgame
from app.features.resolver.schemas import (
    CENTER_KINDS,
    Center,
    ChartEvaluation,
    DescentRecord,
    LevelRecord,
    StepKind,
    StepOutcome,
    Tower,
)
from app.features.resolver.service import ResolverService
from app.features.resolver.tree import NodeStatus, ResolutionTree, StageSummary, TreeEdge, TreeNode

__all__ = [
    "CENTER_KINDS",
    "Center",
    "ChartEvaluation",
    "DescentRecord",
    "LevelRecord",
    "MonomialEndgame",
    "NodeStatus",
    "ResolutionEngine",
    "ResolutionTree",
    "ResolverService",
    "StageSummary",
    "StepKind",
    "StepOutcome",
    "Tower",
    "TreeEdge",
    "TreeNode",
    "child_multiplicities",
    "leaf_exponents",
    "monomial_endgame",
    "resolve_basic_object",
    "root_chart",
]
