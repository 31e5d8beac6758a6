"""
Boucle de résolution par étapes

À chaque étape : évaluation de toutes les cartes actives, sélection des
cartes dont la trace f^d atteint le maximum global, éclatement de leurs
centres et transformation contrôlée de chaque niveau des tours.
"""
import itertools
import logging
from dataclasses import replace
from typing import Dict, List, Optional, Sequence, Tuple

from app.common.exceptions import (
    DivisorialPartNotSmoothError,
    EngineInvariantError,
    HaltReason,
    InvalidIndexError,
    NonConvertibleError,
    NonCoordinateCenterError,
    ResolutionError,
    StageCapExceededError,
    ZeroIdealError,
)
from app.common.metrics import HALT_COUNT, STAGE_COUNT, STAGE_LATENCY
from app.core.config import settings
from app.features.charts import BasicObjectState, Chart, ChartService, ExceptionalDivisor, LabelAllocator
from app.features.exactpoly import Ideal, Ring
from app.features.resolver.schemas import Center, ChartEvaluation, StepKind, Tower
from app.features.resolver.service import ResolverService
from app.features.resolver.tree import NodeStatus, ResolutionTree, StageSummary, TreeEdge, TreeNode

logger = logging.getLogger(__name__)


def root_chart(ring: Ring, boundary: Sequence[int]) -> Chart:
    """
    Carte racine, bord initial H_1, ..., H_r dans l'ordre donné.

    Raises:
        InvalidIndexError: Indice hors de l'anneau
        ValueError: Indices dupliqués
    """
    if len(set(boundary)) != len(boundary):
        raise ValueError(f"Bord avec hyperplans dupliqués: {list(boundary)}")
    for index in boundary:
        if not 0 <= index < ring.dimension:
            raise InvalidIndexError(index, ring.dimension)
    divisors = tuple(
        ExceptionalDivisor(label=label, coordinate_index=index, birth_stage=0, initial=True)
        for label, index in enumerate(boundary, start=1)
    )
    return Chart.root(0, ring, divisors)


def leaf_exponents(chart: Chart, ideal: Ideal) -> Dict[int, int]:
    """Exposant de chaque diviseur de la carte dans la transformée totale de l'idéal d'origine."""
    total = ChartService.total_transform(chart, ideal)
    _, multiplicities = ChartService.weak_transform_extract(
        total, [(d.label, d.coordinate_index) for d in chart.exceptionals]
    )
    return dict(multiplicities)


class ResolutionEngine:
    """
    Résolution d'un objet de base (W, (J, b), E) sur ℚ.

    Les cartes actives sont évaluées à chaque étape ; celles qui n'ont pas
    le maximum global attendent avec leur évaluation en cache.
    """

    def __init__(
        self,
        ring: Ring,
        ideal: Ideal,
        threshold: int,
        boundary: Sequence[int] = (),
        max_stages: Optional[int] = None,
        task: str = "resolve",
    ):
        if ideal.is_zero:
            raise ZeroIdealError("idéal d'entrée")
        if threshold < 1:
            raise ValueError(f"Seuil invalide: {threshold}")
        self.ring = ring
        self.ideal = ideal
        self.threshold = threshold
        self.boundary = tuple(boundary)
        self.max_stages = max_stages or settings.stage_cap
        self.task = task

        root = root_chart(ring, self.boundary)
        self.tree = ResolutionTree(ring=ring, task=task, threshold=threshold)
        self.tree.add_node(TreeNode(id=root.id, parent=None, stage=0, chart=root))
        top = BasicObjectState(
            chart_id=root.id,
            ideal=ideal,
            threshold=threshold,
            initial_labels=frozenset(d.label for d in root.exceptionals),
        )
        self._active: Dict[int, Tuple[Chart, Tower]] = {root.id: (root, Tower(root.id, (top,)))}
        self._cache: Dict[int, ChartEvaluation] = {}
        self._parent_keys: Dict[int, tuple] = {}
        self._ids = itertools.count(1)
        self._labels = LabelAllocator(first_label=len(self.boundary) + 1)

    # =========================================================================
    # BOUCLE
    # =========================================================================

    def run(self) -> ResolutionTree:
        """Exécute les étapes jusqu'à ce qu'aucune carte ne reste active."""
        logger.info(
            f"Résolution ({self.task}) de {self.ideal.text()} dans {self.ring}, b = {self.threshold}, "
            f"bord {list(self.boundary)}"
        )
        stage = 0
        previous_key: Optional[tuple] = None
        while self._active:
            if stage >= self.max_stages:
                self._halt_on_cap(stage)
                break
            with STAGE_LATENCY.labels(task=self.task).time():
                evaluations = self._evaluate_all(stage)
                if not evaluations:
                    break
                max_key = max(evaluation.key for evaluation in evaluations)
                if previous_key is not None and max_key > previous_key:
                    logger.error(f"Étape {stage}: trace maximale croissante")
                    raise EngineInvariantError("trace maximale croissante", {"stage": stage})
                previous_key = max_key
                selected = [evaluation for evaluation in evaluations if evaluation.key == max_key]
                label = self._labels.allocate(stage)
                self._record_stage(stage, label, selected)
                for evaluation in selected:
                    self._blow_up(evaluation, stage, label)
            STAGE_COUNT.labels(task=self.task).inc()
            stage += 1

        for node in self.tree.leaves():
            node.exponents = leaf_exponents(node.chart, self.ideal)
        logger.info(
            f"Résolution terminée en {len(self.tree.stages)} étapes, "
            f"{len(self.tree.leaves())} feuilles, {len(self.tree.halted())} arrêtées"
        )
        return self.tree

    def _evaluate_all(self, stage: int) -> List[ChartEvaluation]:
        evaluations = []
        for chart_id in sorted(self._active):
            cached = self._cache.get(chart_id)
            if cached is not None:
                evaluations.append(cached)
                continue
            chart, tower = self._active[chart_id]
            node = self.tree.node(chart_id)
            try:
                evaluation = ResolverService.evaluate_tower(chart, tower, stage)
            except NonCoordinateCenterError as e:
                center = Center((), e.center) if e.center is not None else None
                self._halt(chart_id, HaltReason.NON_COORDINATE_CENTER, e, center)
                continue
            except NonConvertibleError as e:
                self._halt(chart_id, HaltReason.NON_CONVERTIBLE, e)
                continue
            except DivisorialPartNotSmoothError as e:
                self._halt(chart_id, HaltReason.DIVISORIAL_NOT_SMOOTH, e)
                continue

            node.chart = evaluation.chart
            node.trace = evaluation.outcome.trace
            parent_key = self._parent_keys.get(chart_id)
            if evaluation.outcome.kind == StepKind.RESOLVED:
                node.status = NodeStatus.RESOLVED
                del self._active[chart_id]
                logger.debug(f"Carte {chart_id} résolue à l'étape {stage}")
                continue
            if parent_key is not None and not evaluation.key < parent_key:
                logger.error(
                    f"Carte {chart_id}: trace {evaluation.outcome.trace.text()} non inférieure à celle du parent"
                )
                raise EngineInvariantError(
                    "trace non décroissante après éclatement",
                    {"chart": chart_id, "trace": evaluation.outcome.trace.text()},
                )
            self._cache[chart_id] = evaluation
            logger.debug(
                f"Carte {chart_id}, étape {stage}: {evaluation.outcome.trace.text()} "
                f"-> {evaluation.outcome.center.text()}"
            )
            evaluations.append(evaluation)
        return evaluations

    # =========================================================================
    # ÉCLATEMENTS
    # =========================================================================

    def _blow_up(self, evaluation: ChartEvaluation, stage: int, label: int) -> None:
        chart = evaluation.chart
        center = evaluation.outcome.center
        node = self.tree.node(chart.id)
        node.chart = chart
        node.center = center
        node.center_stage = stage
        node.status = NodeStatus.BLOWN_UP

        children = ChartService.blowup_coordinate_center(
            chart, center.coordinates, stage, label, self._ids, center_text=center.text()
        )
        for child in children:
            m = child.branch_index
            images = child.trail[-1].images()
            levels = []
            for level in evaluation.tower.levels:
                if m in level.flag:
                    break
                pulled = ChartService.pull_back(level.ideal, images)
                levels.append(replace(
                    level,
                    chart_id=child.id,
                    ideal=ChartService.controlled_transform(pulled, level.threshold, m),
                ))
            self.tree.add_node(TreeNode(id=child.id, parent=chart.id, stage=stage + 1, chart=child))
            self.tree.edges.append(TreeEdge(
                parent=chart.id,
                child=child.id,
                substitution=child.substitution_text(),
                center=center.text(),
                label=label,
            ))
            self._active[child.id] = (child, Tower(child.id, tuple(levels)))
            self._parent_keys[child.id] = evaluation.key
        del self._active[chart.id]
        self._cache.pop(chart.id, None)

    def _record_stage(self, stage: int, label: int, selected: List[ChartEvaluation]) -> None:
        leading = selected[0]
        top = leading.levels[0] if leading.levels else None
        gamma = leading.outcome.trace.gamma
        summary = StageSummary(
            index=stage,
            trace=leading.outcome.trace,
            label=label,
            centers=tuple((e.chart.id, e.outcome.center.text()) for e in selected),
            max_w_ord=top.w_ord if top is not None else None,
            max_t=top.t if top is not None else None,
            gamma=gamma,
        )
        self.tree.stages.append(summary)
        logger.info(
            f"Étape {stage}: max {summary.trace.text()}, "
            f"{len(selected)} carte(s) éclatée(s), centres {[text for _, text in summary.centers]}"
        )

    # =========================================================================
    # ARRÊTS
    # =========================================================================

    def _halt(self, chart_id: int, reason: HaltReason, error: ResolutionError, center: Optional[Center] = None) -> None:
        node = self.tree.node(chart_id)
        node.status = NodeStatus.HALTED
        node.halt_reason = reason
        node.detail = error.message
        node.center = center
        del self._active[chart_id]
        self._cache.pop(chart_id, None)
        HALT_COUNT.labels(reason=reason.value).inc()
        logger.warning(f"Carte {chart_id} arrêtée ({reason.value}): {error.message}")

    def _halt_on_cap(self, stage: int) -> None:
        diagnostics = {
            "stage": stage,
            "charts": {
                chart_id: [
                    {"depth": level.depth, "ideal": level.ideal.text(), "threshold": level.threshold}
                    for level in tower.levels
                ]
                for chart_id, (_, tower) in sorted(self._active.items())
            },
        }
        error = StageCapExceededError(self.max_stages, diagnostics)
        self.tree.diagnostics["stage_cap"] = diagnostics
        for chart_id in sorted(self._active):
            self._halt(chart_id, HaltReason.STAGE_CAP, error)


def resolve_basic_object(
    ring: Ring,
    ideal: Ideal,
    threshold: int,
    boundary: Sequence[int] = (),
    max_stages: Optional[int] = None,
    task: str = "resolve",
) -> ResolutionTree:
    """Résout (W, (J, b), E) ; les branches bloquées sont arrêtées, jamais devinées."""
    return ResolutionEngine(ring, ideal, threshold, boundary, max_stages, task).run()
