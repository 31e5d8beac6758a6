"""
Fin de partie monomiale

Résolution combinatoire d'un objet monomial J = ∏ I(H_j)^{a_j} : à chaque
étape, les cartes au Γ maximal éclatent l'intersection canonique de
diviseurs, et le nouveau diviseur reçoit Σ a_j − b.
"""
import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from app.common.exceptions import EngineInvariantError, HaltReason, StageCapExceededError
from app.common.metrics import HALT_COUNT, STAGE_COUNT, STAGE_LATENCY
from app.core.config import settings
from app.features.charts import Chart, ChartService, LabelAllocator
from app.features.exactpoly import Ideal, Ring, coordinate_monomial
from app.features.invariants import GammaValue, InvariantService, MonomialObjectData, TraceTerminal
from app.features.resolver.engine import root_chart
from app.features.resolver.schemas import Center
from app.features.resolver.tree import NodeStatus, ResolutionTree, StageSummary, TreeEdge, TreeNode

logger = logging.getLogger(__name__)


def child_multiplicities(
    parent: Dict[int, int],
    child: Chart,
    center_labels: Sequence[int],
    new_label: int,
    threshold: int,
) -> Dict[int, int]:
    """
    Multiplicités après éclatement : les diviseurs encore visibles dans la
    carte gardent leur a_j, le nouveau reçoit Σ_{centre} a_j − b.
    """
    visible = {d.label for d in child.exceptionals}
    multiplicities = {label: a for label, a in parent.items() if label in visible and label != new_label}
    multiplicities[new_label] = sum(parent[label] for label in center_labels) - threshold
    return multiplicities


class MonomialEndgame:
    """
    Suite de centres d'un objet monomial jusqu'à Sing vide.

    Les multiplicités sont portées par carte, indexées par label ; Γ doit
    décroître strictement d'une carte à ses filles.
    """

    def __init__(
        self,
        ring: Ring,
        boundary: Sequence[int],
        multiplicities: Sequence[int],
        threshold: int,
        max_stages: Optional[int] = None,
    ):
        if len(boundary) != len(multiplicities):
            raise ValueError("Une multiplicité par diviseur du bord")
        if threshold < 1 or any(a < 0 for a in multiplicities):
            raise ValueError(f"Seuil ou multiplicités invalides: b = {threshold}, a = {list(multiplicities)}")
        self.ring = ring
        self.threshold = threshold
        self.max_stages = max_stages or settings.stage_cap

        root = root_chart(ring, boundary)
        self.ideal = Ideal.of(ring, [coordinate_monomial(ring, dict(zip(boundary, multiplicities)))])
        self.tree = ResolutionTree(ring=ring, task="monomial", threshold=threshold)
        self.tree.add_node(TreeNode(id=root.id, parent=None, stage=0, chart=root))
        self._active: Dict[int, Tuple[Chart, Dict[int, int]]] = {
            root.id: (root, {label: a for label, a in enumerate(multiplicities, start=1)})
        }
        self._parent_gamma: Dict[int, GammaValue] = {}
        self._final: Dict[int, Dict[int, int]] = {}
        self._ids = itertools.count(1)
        self._labels = LabelAllocator(first_label=len(boundary) + 1)

    def data(self, chart: Chart, multiplicities: Dict[int, int]) -> MonomialObjectData:
        return InvariantService.monomial_from_multiplicities(
            chart, multiplicities, self.threshold, self.ring.dimension
        )

    def run(self) -> ResolutionTree:
        logger.info(
            f"Fin de partie monomiale: {self.ideal.text()}, b = {self.threshold}"
        )
        stage = 0
        while self._active:
            if stage >= self.max_stages:
                self._halt_on_cap()
                break
            with STAGE_LATENCY.labels(task="monomial").time():
                candidates = self._evaluate(stage)
                if not candidates:
                    break
                best = max(gamma for _, gamma, _, _ in candidates)
                label = self._labels.allocate(stage)
                selected = [c for c in candidates if c[1] == best]
                self.tree.stages.append(StageSummary(
                    index=stage,
                    trace=InvariantService.fd_assemble([], TraceTerminal.GAMMA, best),
                    label=label,
                    centers=tuple((chart_id, center.text()) for chart_id, _, center, _ in selected),
                    gamma=best,
                ))
                logger.info(f"Étape {stage}: Γ max {best.text()}, centres {[c[2].text() for c in selected]}")
                for chart_id, gamma, center, labels in selected:
                    self._blow_up(chart_id, gamma, center, labels, stage, label)
            STAGE_COUNT.labels(task="monomial").inc()
            stage += 1

        for node in self.tree.leaves():
            if node.status == NodeStatus.RESOLVED:
                node.exponents = {label: a for label, a in self._final[node.id].items() if a}
        return self.tree

    def _evaluate(self, stage: int) -> List[Tuple[int, GammaValue, Center, Tuple[int, ...]]]:
        candidates = []
        for chart_id in sorted(self._active):
            chart, multiplicities = self._active[chart_id]
            data = self.data(chart, multiplicities)
            node = self.tree.node(chart_id)
            if InvariantService.monomial_sing_empty(data):
                node.status = NodeStatus.RESOLVED
                node.trace = InvariantService.fd_assemble([], TraceTerminal.RESOLVED)
                self._final[chart_id] = multiplicities
                del self._active[chart_id]
                continue
            gamma, coordinates, labels = InvariantService.gamma_max(data)
            parent_gamma = self._parent_gamma.get(chart_id)
            if parent_gamma is not None and not gamma < parent_gamma:
                logger.error(f"Carte {chart_id}: Γ {gamma.text()} non inférieur à {parent_gamma.text()}")
                raise EngineInvariantError(
                    "Γ non strictement décroissant",
                    {"chart": chart_id, "gamma": gamma.text(), "parent": parent_gamma.text()},
                )
            node.trace = InvariantService.fd_assemble([], TraceTerminal.GAMMA, gamma)
            center = Center(coordinates, Ideal.coordinates(chart.ring, coordinates), 0, labels)
            candidates.append((chart_id, gamma, center, labels))
        return candidates

    def _blow_up(
        self,
        chart_id: int,
        gamma: GammaValue,
        center: Center,
        labels: Tuple[int, ...],
        stage: int,
        label: int,
    ) -> None:
        chart, multiplicities = self._active.pop(chart_id)
        node = self.tree.node(chart_id)
        node.status = NodeStatus.BLOWN_UP
        node.center = center
        node.center_stage = stage
        children = ChartService.blowup_coordinate_center(
            chart, center.coordinates, stage, label, self._ids, center_text=center.text()
        )
        for child in children:
            self.tree.add_node(TreeNode(id=child.id, parent=chart_id, stage=stage + 1, chart=child))
            self.tree.edges.append(TreeEdge(
                parent=chart_id,
                child=child.id,
                substitution=child.substitution_text(),
                center=center.text(),
                label=label,
            ))
            self._active[child.id] = (
                child,
                child_multiplicities(multiplicities, child, labels, label, self.threshold),
            )
            self._parent_gamma[child.id] = gamma

    def _halt_on_cap(self) -> None:
        error = StageCapExceededError(self.max_stages)
        for chart_id in sorted(self._active):
            node = self.tree.node(chart_id)
            node.status = NodeStatus.HALTED
            node.halt_reason = HaltReason.STAGE_CAP
            node.detail = error.message
            HALT_COUNT.labels(reason=HaltReason.STAGE_CAP.value).inc()
            logger.warning(f"Carte {chart_id} arrêtée: {error.message}")
        self._active.clear()


def monomial_endgame(
    ring: Ring,
    boundary: Sequence[int],
    multiplicities: Sequence[int],
    threshold: int,
    max_stages: Optional[int] = None,
) -> ResolutionTree:
    """Résout l'objet monomial (𝔸^d, (∏ x_{boundary_j}^{a_j}, b), E)."""
    return MonomialEndgame(ring, boundary, multiplicities, threshold, max_stages).run()
