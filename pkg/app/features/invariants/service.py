"""
Service des invariants

max w-ord d'un niveau, invariant t avec partition E⁻/E⁺ du bord,
invariant Γ des objets monomiaux et assemblage de la trace f^d.
"""
import logging
from dataclasses import replace
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

from app.common.exceptions import (
    EngineInvariantError,
    SingEmptyError,
    SubsetCapExceededError,
    ZeroIdealError,
)
from app.core.config import settings
from app.features.charts import BasicObjectState, Chart, ChartService
from app.features.deltaorder import DeltaOrderService
from app.features.exactpoly import Ideal, ideal_product, ideal_sum, is_trivial
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

logger = logging.getLogger(__name__)


class InvariantService:
    """Calcul des invariants d'un niveau de tour."""

    # =========================================================================
    # W-ORD
    # =========================================================================

    @staticmethod
    def sing_locus(state: BasicObjectState) -> Ideal:
        """Δ^{b−1}(J), de zéros Sing(J, b)."""
        return DeltaOrderService.order_locus(state.ideal, state.threshold)

    @staticmethod
    def max_w_ord(state: BasicObjectState, chart: Chart, sing: Optional[Ideal] = None) -> WOrdResult:
        """
        Ordre maximal du transformé faible sur Sing(J, b), divisé par b.

        Args:
            state: Niveau (Sing(J, b) supposé non vide)
            chart: Carte portant le registre des diviseurs
            sing: Δ^{b−1}(J) déjà calculé, le cas échéant

        Raises:
            ZeroIdealError: Si l'idéal du niveau est nul
        """
        if state.ideal.is_zero:
            raise ZeroIdealError(f"niveau {state.depth} de la carte {chart.id}")
        if sing is None:
            sing = InvariantService.sing_locus(state)
        run_born = state.run_born(chart)
        weak, multiplicities = ChartService.weak_transform_extract(
            state.ideal, [(d.label, d.coordinate_index) for d in run_born]
        )

        # Plus grand c tel que Δ^{c−1}(J̄) rencontre Sing(J, b) (monotone en c)
        low, high = 0, DeltaOrderService.max_order(weak)
        while low < high:
            middle = (low + high + 1) // 2
            candidate = ideal_sum(DeltaOrderService.delta_power(weak, middle - 1), sing)
            if is_trivial(candidate):
                high = middle - 1
            else:
                low = middle
        order = low
        w_ord = QQ(order, state.threshold)
        logger.debug(
            f"Carte {chart.id}, niveau {state.depth}: ordre de J̄ = {order}, w-ord = {w_ord}"
        )

        if order == 0:
            by_label = dict(multiplicities)
            monomial = MonomialObjectData(
                divisors=tuple(
                    MonomialDivisor(d.label, d.coordinate_index, by_label[d.label])
                    for d in run_born if by_label[d.label]
                ),
                threshold=state.threshold,
                dimension=state.level,
            )
            return WOrdResult(w_ord, 0, weak, tuple(multiplicities), sing, Ideal.unit(sing.ring), monomial)

        locus = ideal_sum(DeltaOrderService.delta_power(weak, order - 1), sing)
        return WOrdResult(w_ord, order, weak, tuple(multiplicities), sing, locus)

    @staticmethod
    def record_w_ord(state: BasicObjectState, w_ord, stage: int) -> BasicObjectState:
        """
        Met à jour le marqueur de chute de max w-ord.

        Raises:
            EngineInvariantError: Si max w-ord augmente
        """
        last = state.max_w_ord_at_last_drop
        if last is None:
            return replace(state, max_w_ord_at_last_drop=w_ord)
        if w_ord > last:
            logger.error(f"max w-ord croissant sur la carte {state.chart_id}: {last} -> {w_ord}")
            raise EngineInvariantError(
                "max w-ord croissant",
                {"chart": state.chart_id, "depth": state.depth, "before": str(last), "after": str(w_ord)},
            )
        if w_ord < last:
            return replace(state, max_w_ord_at_last_drop=w_ord, drop_stage=stage)
        return state

    # =========================================================================
    # INVARIANT T
    # =========================================================================

    @staticmethod
    def t_state(
        state: BasicObjectState,
        chart: Chart,
        w_result: WOrdResult,
        stage: int,
    ) -> TResult:
        """
        max t = (max w-ord, n) et composantes de Max t.

        E⁻ rassemble les diviseurs du bord nés au plus tard à l'étape de la
        dernière chute de max w-ord ; n est le plus grand nombre de
        diviseurs de E⁻ dont l'intersection rencontre Max w-ord.

        Raises:
            EngineInvariantError: Si max w-ord = 0 ou si t augmente
            SubsetCapExceededError: Si |E⁻| dépasse le plafond
        """
        if not w_result.w_ord:
            raise EngineInvariantError("invariant t appelé avec max w-ord = 0", {"chart": chart.id})
        state = InvariantService.record_w_ord(state, w_result.w_ord, stage)

        boundary = state.boundary(chart)
        e_minus = [d for d in boundary if d.birth_stage <= state.drop_stage]
        e_plus = [d for d in boundary if d.birth_stage > state.drop_stage]
        if len(e_minus) > settings.eminus_subset_cap:
            raise SubsetCapExceededError(len(e_minus), settings.eminus_subset_cap)

        n, components, subsets = 0, [w_result.locus], []
        for size in range(len(e_minus), 0, -1):
            found = []
            for subset in combinations(e_minus, size):
                component = ideal_sum(
                    w_result.locus,
                    Ideal.coordinates(chart.ring, [d.coordinate_index for d in subset]),
                )
                if not is_trivial(component):
                    found.append((tuple(d.label for d in subset), component))
            if found:
                n = size
                subsets = [labels for labels, _ in found]
                components = [component for _, component in found]
                break

        value = TValue(w_result.w_ord, n)
        if state.last_t is not None and (value.w_ord, value.n) > tuple(state.last_t):
            logger.error(f"max t croissant sur la carte {chart.id}: {state.last_t} -> {value}")
            raise EngineInvariantError(
                "max t croissant",
                {"chart": chart.id, "depth": state.depth, "before": str(state.last_t), "after": value.text()},
            )

        locus = components[0]
        for component in components[1:]:
            locus = ideal_product(locus, component)

        updated = replace(
            state,
            last_t=(value.w_ord, value.n),
            e_minus_labels=frozenset(d.label for d in e_minus),
            e_plus_labels=frozenset(d.label for d in e_plus),
        )
        logger.debug(f"Carte {chart.id}, niveau {state.depth}: max t = {value.text()}")
        return TResult(
            value=value,
            components=tuple(components),
            locus=locus,
            state=updated,
            e_minus=tuple(sorted(d.label for d in e_minus)),
            e_plus=tuple(sorted(d.label for d in e_plus)),
            subsets=tuple(subsets),
        )

    # =========================================================================
    # INVARIANT Γ
    # =========================================================================

    @staticmethod
    def gamma_max(data: MonomialObjectData) -> Tuple[GammaValue, Tuple[int, ...], Tuple[int, ...]]:
        """
        Maximum de Γ sur les strates d'un objet monomial.

        Returns:
            (Γ max, indices de coordonnées du centre, labels du centre)

        Raises:
            SingEmptyError: Si aucun ensemble de diviseurs n'atteint b
        """
        divisors = [d for d in data.divisors if d.multiplicity > 0]
        b = data.threshold
        for size in range(1, len(divisors) + 1):
            best = None
            for subset in combinations(divisors, size):
                total = sum(d.multiplicity for d in subset)
                if total < b:
                    continue
                labels = tuple(sorted((d.label for d in subset), reverse=True))
                candidate = (total, labels, subset)
                if best is None or candidate[:2] > best[:2]:
                    best = candidate
            if best is not None:
                total, labels, subset = best
                padded = labels + (0,) * max(0, data.dimension - len(labels))
                gamma = GammaValue(-size, QQ(total, b), padded)
                coordinates = tuple(sorted(d.coordinate_index for d in subset))
                return gamma, coordinates, labels
        raise SingEmptyError(b)

    @staticmethod
    def monomial_sing_empty(data: MonomialObjectData) -> bool:
        """Sing vide : la somme de toutes les multiplicités reste < b."""
        return sum(d.multiplicity for d in data.divisors) < data.threshold

    # =========================================================================
    # TRACE F^D
    # =========================================================================

    @staticmethod
    def fd_assemble(
        levels: Sequence[TValue],
        terminal: TraceTerminal,
        gamma: Optional[GammaValue] = None,
    ) -> FdTrace:
        """
        Assemble la trace d'une évaluation.

        Raises:
            EngineInvariantError: Si la trace est incohérente
        """
        if terminal == TraceTerminal.RESOLVED:
            return FdTrace()
        if terminal == TraceTerminal.DIVISOR_MARKER and not levels:
            raise EngineInvariantError("trace de cas A sans niveau")
        if terminal == TraceTerminal.GAMMA and gamma is None:
            raise EngineInvariantError("trace monomiale sans Γ")
        return FdTrace(levels=tuple(levels), terminal=terminal, gamma=gamma)

    @staticmethod
    def monomial_from_multiplicities(chart: Chart, multiplicities: dict, threshold: int, dimension: int) -> MonomialObjectData:
        """Objet monomial d'une carte à partir de multiplicités indexées par label."""
        divisors: List[MonomialDivisor] = []
        for label, a in sorted(multiplicities.items()):
            divisor = chart.divisor(label)
            if divisor is not None:
                divisors.append(MonomialDivisor(label, divisor.coordinate_index, a))
        return MonomialObjectData(tuple(divisors), threshold, dimension)
