"""
Service des cartes affines

Éclatements le long de sous-espaces de coordonnées, registre des diviseurs
exceptionnels (avec renommage des diviseurs utilisés comme centres de
codimension un), transformées totale, contrôlée, faible et stricte.
"""
import logging
import threading
from dataclasses import replace
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from app.common.exceptions import EngineInvariantError, InvalidIndexError, NotDivisibleError
from app.common.metrics import BLOWUP_COUNT
from app.features.charts.schemas import (
    BlowupSubstitution,
    ChangeKind,
    Chart,
    CoordinateChange,
    ExceptionalDivisor,
    HyperplaneStatus,
)
from app.features.exactpoly import (
    Ideal,
    Polynomial,
    coordinate_monomial,
    divide_by_coordinate,
    ideal_valuation,
    saturate,
    substitute,
)

logger = logging.getLogger(__name__)


class LabelAllocator:
    """
    Compteur global des labels de diviseurs.

    Un seul label par étape : les cartes sœurs éclatées à la même étape
    partagent le label du diviseur H_{r+k} (préimage totale du centre).
    """

    def __init__(self, first_label: int = 1):
        self._next = first_label
        self._by_stage: Dict[int, int] = {}
        self._lock = threading.Lock()

    def allocate(self, stage: int) -> int:
        with self._lock:
            if stage not in self._by_stage:
                self._by_stage[stage] = self._next
                self._next += 1
            return self._by_stage[stage]

    @property
    def next_label(self) -> int:
        return self._next


class ChartService:
    """Opérations sur les cartes et transformations d'idéaux."""

    # =========================================================================
    # ÉCLATEMENTS
    # =========================================================================

    @staticmethod
    def strict_transform_hyperplane(
        index: int,
        center: Iterable[int],
        chart_index: int,
    ) -> Tuple[HyperplaneStatus, Optional[int]]:
        """
        Devenir de l'hyperplan {x_index = 0} dans la carte `chart_index`.

        Returns:
            (statut, indice dans la carte fille) ; l'indice est None quand
            l'hyperplan est devenu le diviseur exceptionnel
        """
        members = set(center)
        if index not in members:
            return HyperplaneStatus.UNCHANGED, index
        if index != chart_index:
            return HyperplaneStatus.STRICT_TRANSFORM, index
        return HyperplaneStatus.BECAME_EXCEPTIONAL, None

    @staticmethod
    def blowup_coordinate_center(
        chart: Chart,
        center: Sequence[int],
        stage: int,
        label: int,
        ids: Iterator[int],
        center_text: Optional[str] = None,
    ) -> List[Chart]:
        """
        Éclate la carte le long de {x_i = 0 : i ∈ M}.

        Args:
            chart: Carte parente
            center: Indices M du centre (|M| ≥ 1)
            stage: Étape courante (le nouveau diviseur naît à stage + 1)
            label: Label global du nouveau diviseur
            ids: Source des identifiants des cartes filles
            center_text: Texte du centre pour la généalogie

        Returns:
            Une carte fille par m ∈ M, dans l'ordre croissant de m

        Raises:
            InvalidIndexError: Si un indice est hors de l'anneau
        """
        members = tuple(sorted(set(center)))
        if not members:
            raise InvalidIndexError(-1, chart.ring.dimension)
        for index in members:
            if not 0 <= index < chart.ring.dimension:
                raise InvalidIndexError(index, chart.ring.dimension)

        kind = "divisorial" if len(members) == 1 else "coordinate"
        children = []
        for m in members:
            substitution = BlowupSubstitution(chart.ring, members, m, label, stage)
            images = substitution.images()
            replaced = None
            exceptionals = []
            for divisor in chart.exceptionals:
                status, _ = ChartService.strict_transform_hyperplane(divisor.coordinate_index, members, m)
                if status == HyperplaneStatus.BECAME_EXCEPTIONAL:
                    replaced = divisor.label if len(members) == 1 else None
                    continue
                exceptionals.append(divisor)
            exceptionals.append(ExceptionalDivisor(
                label=label,
                coordinate_index=m,
                birth_stage=stage + 1,
                center_text=center_text,
                replaces=replaced,
            ))
            flag = chart.flag[:chart.flag.index(m)] if m in chart.flag else chart.flag
            children.append(Chart(
                id=next(ids),
                ring=chart.ring,
                pullback=tuple(substitute(p, images) for p in chart.pullback),
                parent_id=chart.id,
                branch_index=m,
                stage=stage + 1,
                trail=chart.trail + (substitution,),
                exceptionals=tuple(sorted(exceptionals, key=lambda d: d.label)),
                flag=flag,
            ))
            BLOWUP_COUNT.labels(kind=kind).inc()
        logger.debug(
            f"Carte {chart.id}: éclatement de centre {members} -> cartes {[c.id for c in children]}"
        )
        return children

    # =========================================================================
    # TRANSFORMÉES
    # =========================================================================

    @staticmethod
    def pull_back(ideal: Ideal, images: Sequence[Polynomial]) -> Ideal:
        """Transformée totale par une substitution (images des variables)."""
        return Ideal.of(ideal.ring, [substitute(g, images) for g in ideal.generators])

    @staticmethod
    def controlled_transform(ideal: Ideal, b: int, exceptional_index: int) -> Ideal:
        """
        Divise chaque générateur du tiré en arrière par x_exc^b.

        Raises:
            NotDivisibleError: Si la valuation le long du diviseur est < b
        """
        valuation = ideal_valuation(ideal, exceptional_index)
        if valuation < b:
            raise NotDivisibleError(exceptional_index, valuation, b)
        return Ideal.of(ideal.ring, [divide_by_coordinate(g, exceptional_index, b) for g in ideal.generators])

    @staticmethod
    def weak_transform_extract(
        ideal: Ideal,
        exceptionals: Sequence[Tuple[int, int]],
    ) -> Tuple[Ideal, List[Tuple[int, int]]]:
        """
        Retire chaque coordonnée exceptionnelle à sa valuation complète.

        Args:
            ideal: Idéal (non nul)
            exceptionals: Couples (label, indice de variable)

        Returns:
            (transformée faible J̄, multiplicités [(label, a_j)])
        """
        current = ideal
        multiplicities = []
        for label, index in exceptionals:
            a = ideal_valuation(current, index)
            multiplicities.append((label, a))
            if a:
                current = Ideal.of(current.ring, [divide_by_coordinate(g, index, a) for g in current.generators])
        return current, multiplicities

    @staticmethod
    def total_transform(chart: Chart, ideal: Ideal) -> Ideal:
        """Transformée totale d'un idéal des coordonnées d'origine."""
        return ChartService.pull_back(ideal, chart.pullback)

    @staticmethod
    def exceptional_monomial(chart: Chart, multiplicities: Dict[int, int]) -> Polynomial:
        """∏ x_{coord(H)}^{a_H} pour des multiplicités indexées par label."""
        powers = {}
        for label, a in multiplicities.items():
            divisor = chart.divisor(label)
            if divisor is not None and a:
                powers[divisor.coordinate_index] = a
        return coordinate_monomial(chart.ring, powers)

    @staticmethod
    def strict_transform(chart: Chart, ideal: Ideal) -> Ideal:
        """
        Transformée stricte d'une sous-variété V(I) des coordonnées d'origine.

        Idéal principal : transformée faible du tiré en arrière. Sinon :
        saturation par le produit des coordonnées exceptionnelles.
        """
        total = ChartService.total_transform(chart, ideal)
        exceptionals = [d for d in chart.exceptionals if not d.initial]
        if not exceptionals:
            return total
        if len(ideal.generators) == 1:
            weak, _ = ChartService.weak_transform_extract(
                total, [(d.label, d.coordinate_index) for d in exceptionals]
            )
            return weak
        product = coordinate_monomial(chart.ring, {d.coordinate_index: 1 for d in exceptionals})
        return saturate(total, product)

    # =========================================================================
    # CHANGEMENTS DE COORDONNÉES
    # =========================================================================

    @staticmethod
    def _moved_divisor(change: CoordinateChange, divisor: ExceptionalDivisor) -> ExceptionalDivisor:
        """Nouvel indice d'un diviseur (doit rester un hyperplan de coordonnées)."""
        index = divisor.coordinate_index
        if change.kind == ChangeKind.TRIANGULAR:
            if index == change.target and change.replacement:
                raise EngineInvariantError(
                    "diviseur exceptionnel non coordonné après changement",
                    {"label": divisor.label, "change": change.text()},
                )
            return divisor
        row = change.matrix[index]
        support = [j for j, a in enumerate(row) if a]
        if len(support) != 1 or change.translation[index]:
            raise EngineInvariantError(
                "diviseur exceptionnel non coordonné après changement",
                {"label": divisor.label, "change": change.text()},
            )
        return replace(divisor, coordinate_index=support[0])

    @staticmethod
    def apply_coordinate_change(
        chart: Chart,
        change: CoordinateChange,
        ideals: Sequence[Ideal],
    ) -> Tuple[Chart, List[Ideal]]:
        """
        Réécrit la carte et les idéaux fournis par l'automorphisme.

        Raises:
            EngineInvariantError: Si un diviseur cesserait d'être une coordonnée
        """
        images = change.images()
        if all(image == gen for image, gen in zip(images, chart.ring.gens)):
            return chart, list(ideals)
        exceptionals = tuple(ChartService._moved_divisor(change, d) for d in chart.exceptionals)
        updated = replace(
            chart,
            pullback=tuple(substitute(p, images) for p in chart.pullback),
            trail=chart.trail + (change,),
            exceptionals=exceptionals,
        )
        logger.debug(f"Carte {chart.id}: changement {change.kind.value} {change.text()}")
        return updated, [ChartService.pull_back(ideal, images) for ideal in ideals]
