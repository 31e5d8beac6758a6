"""
Arbre de résolution

Cartes (nœuds) reliées par les éclatements (arêtes), résumé des
invariants de chaque étape et statut final de chaque feuille.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from app.common.exceptions import HaltReason
from app.features.charts import Chart
from app.features.exactpoly import Rational, Ring
from app.features.invariants import FdTrace, GammaValue, TValue
from app.features.resolver.schemas import Center


class NodeStatus(str, Enum):
    """Statut d'une carte de l'arbre."""
    ACTIVE = "active"
    BLOWN_UP = "blownUp"
    RESOLVED = "resolved"
    PRINCIPALIZED = "principalized"
    STRICT_TRANSFORM_SMOOTH = "strictTransformSmooth"
    HALTED = "halted"


@dataclass
class TreeNode:
    """Carte de la résolution et ce qui lui est arrivé."""
    id: int
    parent: Optional[int]
    stage: int
    chart: Chart
    status: NodeStatus = NodeStatus.ACTIVE
    halt_reason: Optional[HaltReason] = None
    detail: Optional[str] = None
    center: Optional[Center] = None
    center_stage: Optional[int] = None
    trace: Optional[FdTrace] = None
    exponents: Dict[int, int] = field(default_factory=dict)
    stop_stage: Optional[int] = None

    @property
    def is_leaf_status(self) -> bool:
        return self.status not in (NodeStatus.ACTIVE, NodeStatus.BLOWN_UP)

    def status_text(self) -> str:
        if self.status == NodeStatus.HALTED and self.halt_reason is not None:
            return f"halted({self.halt_reason.value})"
        return self.status.value


@dataclass(frozen=True)
class TreeEdge:
    parent: int
    child: int
    substitution: str
    center: str
    label: int


@dataclass(frozen=True)
class StageSummary:
    """Invariant global maximal d'une étape et centres éclatés."""
    index: int
    trace: FdTrace
    label: int
    centers: Tuple[Tuple[int, str], ...]
    max_w_ord: Optional[Rational] = None
    max_t: Optional[TValue] = None
    gamma: Optional[GammaValue] = None


@dataclass
class ResolutionTree:
    """Arbre complet d'une exécution."""
    ring: Ring
    task: str
    threshold: int
    nodes: Dict[int, TreeNode] = field(default_factory=dict)
    edges: List[TreeEdge] = field(default_factory=list)
    stages: List[StageSummary] = field(default_factory=list)
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    def add_node(self, node: TreeNode) -> TreeNode:
        self.nodes[node.id] = node
        return node

    def node(self, node_id: int) -> TreeNode:
        return self.nodes[node_id]

    @property
    def root(self) -> TreeNode:
        return next(node for node in self.nodes.values() if node.parent is None)

    def children(self, node_id: int) -> List[TreeNode]:
        return sorted(
            (node for node in self.nodes.values() if node.parent == node_id),
            key=lambda node: node.id,
        )

    def sorted_nodes(self) -> List[TreeNode]:
        return sorted(self.nodes.values(), key=lambda node: (node.stage, node.id))

    def leaves(self) -> List[TreeNode]:
        parents = {edge.parent for edge in self.edges}
        return [node for node in self.sorted_nodes() if node.id not in parents]

    def path(self, node_id: int) -> List[TreeNode]:
        """Nœuds de la racine jusqu'à `node_id` inclus."""
        path = []
        current: Optional[int] = node_id
        while current is not None:
            node = self.nodes[current]
            path.append(node)
            current = node.parent
        return list(reversed(path))

    def centers_at(self, stage: int) -> List[Center]:
        return [
            node.center for node in self.sorted_nodes()
            if node.center is not None and node.center_stage == stage
        ]

    def halted(self) -> List[TreeNode]:
        return [node for node in self.leaves() if node.status == NodeStatus.HALTED]

    def prune_below(self, node_id: int) -> None:
        """Supprime la descendance d'un nœud."""
        doomed = [child.id for child in self.children(node_id)]
        while doomed:
            current = doomed.pop()
            doomed.extend(child.id for child in self.children(current))
            del self.nodes[current]
        kept = set(self.nodes)
        self.edges = [edge for edge in self.edges if edge.parent in kept and edge.child in kept]
