"""
Service des drivers

Tâches utilisateur au-dessus du moteur : résolution d'un objet de base,
principalisation d'un idéal, résolution plongée d'une sous-variété et
fin de partie monomiale.
"""
import logging
from typing import List

from app.common.exceptions import EngineInvariantError, JacobianCheckFailedError
from app.core.config import settings
from app.features.charts import ChartService
from app.features.deltaorder import DeltaOrderService
from app.features.drivers.schemas import Problem, Task
from app.features.exactpoly import Ideal, ideal_equals, is_trivial, krull_dimension, radical_contains
from app.features.resolver import NodeStatus, ResolutionEngine, ResolutionTree, TreeNode, monomial_endgame

logger = logging.getLogger(__name__)


def is_smooth(ideal: Ideal) -> bool:
    """Critère jacobien pour V(I), de codimension d − dim V(I)."""
    codimension = ideal.ring.dimension - krull_dimension(ideal)
    return is_trivial(DeltaOrderService.jacobian_singular_locus(ideal, codimension))


class DriverService:
    """Exécution des quatre tâches sur un Problem validé."""

    @staticmethod
    def run(problem: Problem) -> ResolutionTree:
        """Aiguille vers la tâche demandée."""
        handlers = {
            Task.RESOLVE: DriverService.resolve,
            Task.PRINCIPALIZE: DriverService.principalize,
            Task.EMBEDDED: DriverService.embedded_resolve,
            Task.MONOMIAL: DriverService.monomial,
        }
        return handlers[problem.task](problem)

    @staticmethod
    def resolve(problem: Problem) -> ResolutionTree:
        return ResolutionEngine(
            problem.ring,
            problem.ideal,
            problem.threshold,
            boundary=problem.boundary,
            max_stages=problem.max_stages,
            task=Task.RESOLVE.value,
        ).run()

    @staticmethod
    def monomial(problem: Problem) -> ResolutionTree:
        return monomial_endgame(
            problem.ring,
            problem.boundary,
            [problem.multiplicities[index] for index in problem.boundary],
            problem.threshold,
            max_stages=problem.max_stages,
        )

    # =========================================================================
    # PRINCIPALISATION
    # =========================================================================

    @staticmethod
    def principalize(problem: Problem) -> ResolutionTree:
        """
        Principalise I : résout (W, (I, 1), ∅) puis certifie chaque feuille.

        Returns:
            Arbre dont les feuilles résolues sont marquées principalized,
            avec l'exposant de chaque diviseur exceptionnel
        """
        DriverService._warn_forced(problem)
        tree = ResolutionEngine(
            problem.ring, problem.ideal, 1, max_stages=problem.max_stages, task=Task.PRINCIPALIZE.value
        ).run()
        DriverService.certify_principal(tree, problem.ideal)
        return tree

    @staticmethod
    def certify_principal(tree: ResolutionTree, ideal: Ideal) -> None:
        """
        Sur chaque feuille résolue : transformée faible unité et
        transformée totale égale au monôme exceptionnel.

        Raises:
            EngineInvariantError: Certificat en échec
        """
        for leaf in tree.leaves():
            if leaf.status != NodeStatus.RESOLVED:
                continue
            chart = leaf.chart
            total = ChartService.total_transform(chart, ideal)
            weak, multiplicities = ChartService.weak_transform_extract(
                total, [(d.label, d.coordinate_index) for d in chart.exceptionals]
            )
            monomial = ChartService.exceptional_monomial(chart, dict(multiplicities))
            if not is_trivial(weak) or not ideal_equals(total, Ideal.of(chart.ring, [monomial])):
                logger.error(f"Carte {chart.id}: {total.text()} n'est pas monomial")
                raise EngineInvariantError(
                    "certificat de principalisation",
                    {"chart": chart.id, "total": total.text(), "weak": weak.text()},
                )
            leaf.exponents = {label: a for label, a in multiplicities if a}
            leaf.status = NodeStatus.PRINCIPALIZED
        principalized = [n for n in tree.leaves() if n.status == NodeStatus.PRINCIPALIZED]
        logger.info(f"Principalisation certifiée sur {len(principalized)} feuilles")

    # =========================================================================
    # RESOLUTION PLONGEE
    # =========================================================================

    @staticmethod
    def embedded_resolve(problem: Problem) -> ResolutionTree:
        """
        Résolution plongée de X = V(I).

        La principalisation tourne jusqu'au bout ; chaque carte où la
        transformée stricte de X devient une composante du centre choisi
        reçoit son étape d'arrêt, certifiée par le critère jacobien. Avec
        `embedded_stop_at_smooth` (ou quand la branche s'est arrêtée sur ce
        centre), le nœud devient strictTransformSmooth et sa descendance
        est coupée.

        Raises:
            JacobianCheckFailedError: Transformée stricte non lisse à l'arrêt
            EngineInvariantError: Centre initial hors de Sing(X)
        """
        DriverService._warn_forced(problem)
        ideal = problem.ideal
        tree = ResolutionEngine(
            problem.ring, ideal, 1, max_stages=problem.max_stages, task=Task.EMBEDDED.value
        ).run()

        stops = DriverService.mark_stops(tree, ideal)
        if tree.root.stop_stage is None and tree.root.center is not None:
            DriverService.check_center_over_singular_locus(tree.root.center.ideal, ideal)

        for node in stops:
            if settings.embedded_stop_at_smooth or node.status == NodeStatus.HALTED:
                tree.prune_below(node.id)
                node.status = NodeStatus.STRICT_TRANSFORM_SMOOTH
                node.halt_reason = None
        DriverService.certify_principal(tree, ideal)
        tree.diagnostics["stop_stages"] = sorted({node.stop_stage for node in stops})
        return tree

    @staticmethod
    def mark_stops(tree: ResolutionTree, ideal: Ideal) -> List[TreeNode]:
        """
        Marque l'étape d'arrêt sur les nœuds où la transformée stricte de X
        est une composante du centre (premier nœud de chaque chemin).
        """
        stops = []
        stopped = set()
        for node in tree.sorted_nodes():
            if node.parent in stopped:
                stopped.add(node.id)
                continue
            if node.center is None:
                continue
            strict = ChartService.strict_transform(node.chart, ideal)
            if is_trivial(strict) or not DriverService.is_component(strict, node.center.ideal):
                continue
            if not is_smooth(strict):
                logger.error(f"Carte {node.id}: transformée stricte {strict.text()} singulière à l'arrêt")
                raise JacobianCheckFailedError(node.id, strict.text())
            node.stop_stage = node.center_stage if node.center_stage is not None else node.stage
            stopped.add(node.id)
            stops.append(node)
            logger.info(f"Carte {node.id}: arrêt à l'étape {node.stop_stage}, X = {strict.text()} lisse")
        return stops

    @staticmethod
    def is_component(strict: Ideal, center: Ideal) -> bool:
        """V(strict) ⊆ V(center) avec la même dimension."""
        return radical_contains(strict, center) and krull_dimension(strict) == krull_dimension(center)

    @staticmethod
    def check_center_over_singular_locus(center: Ideal, ideal: Ideal) -> None:
        """Le centre de l'étape 0 est contenu dans Sing(X)."""
        codimension = ideal.ring.dimension - krull_dimension(ideal)
        singular = DeltaOrderService.jacobian_singular_locus(ideal, codimension)
        if not radical_contains(center, singular):
            logger.error(f"Centre {center.text()} hors de Sing(X) = V{singular.text()}")
            raise EngineInvariantError("centre hors de Sing(X)", {"center": center.text()})

    @staticmethod
    def _warn_forced(problem: Problem) -> None:
        if problem.threshold != 1:
            logger.warning(f"Tâche {problem.task.value}: b = {problem.threshold} remplacé par 1")
        if problem.boundary:
            logger.warning(f"Tâche {problem.task.value}: bord {list(problem.boundary_names)} ignoré")
