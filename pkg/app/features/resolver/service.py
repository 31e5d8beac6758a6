"""
Service du résolveur

Dispatch d'une carte entre objet résolu, fin de partie monomiale, centre
de codimension un (cas A) et descente (cas B) par J′, J″, hypersurface
de contact maximal et idéal coefficient.
"""
import logging
from dataclasses import replace
from itertools import combinations, combinations_with_replacement
from math import factorial
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from app.common.exceptions import (
    DivisorialPartNotSmoothError,
    EngineInvariantError,
    NonConvertibleError,
    NonCoordinateCenterError,
)
from app.core.config import settings
from app.features.charts import BasicObjectState, Chart, ChartService, CoordinateChange
from app.features.deltaorder import DeltaOrderService
from app.features.exactpoly import (
    Ideal,
    coordinate_form,
    coordinate_monomial,
    coordinate_valuation,
    divide_by_coordinate,
    format_polynomial,
    gcd_of,
    groebner_basis,
    ideal_product,
    ideal_sum,
    is_trivial,
    partial_derivative,
    reduced_generators,
    reduced_power,
    restrict,
    square_free_part,
    univariate_generator,
)
from app.features.invariants import InvariantService, TraceTerminal, TResult, WOrdResult
from app.features.resolver.schemas import (
    Center,
    ChartEvaluation,
    DescentRecord,
    LevelRecord,
    StepKind,
    StepOutcome,
    Tower,
)

logger = logging.getLogger(__name__)


def _power(ideal: Ideal, exponent: int) -> Ideal:
    """I^e, directement sur le générateur quand l'idéal est univarié."""
    univariate = univariate_generator(ideal)
    if univariate is not None:
        _, g = univariate
        return Ideal.of(ideal.ring, [g ** exponent])
    return reduced_power(ideal, exponent)


def _coordinate_power(ideal_ring, indices: Sequence[int], exponent: int) -> Ideal:
    """(x_{i_1}, ..., x_{i_n})^e : tous les monômes de degré e."""
    generators = []
    for combo in combinations_with_replacement(indices, exponent):
        powers = {}
        for index in combo:
            powers[index] = powers.get(index, 0) + 1
        generators.append(coordinate_monomial(ideal_ring, powers))
    return Ideal.of(ideal_ring, generators)


class ResolverService:
    """Construction des centres d'une carte à partir de sa tour."""

    # =========================================================================
    # J′ ET J″
    # =========================================================================

    @staticmethod
    def make_j_prime(state: BasicObjectState, chart: Chart, w_result: WOrdResult) -> Tuple[Ideal, int]:
        """
        Objet simple (J′, b′) associé au niveau.

        b_k = b · max w-ord. Si b_k ≥ b : (J̄, b_k). Sinon
        J′ = J̄^{b−b_k} + (∏ x_j^{a_j})^{b_k} et b′ = b_k(b − b_k).

        Raises:
            EngineInvariantError: Si max w-ord = 0
        """
        if not w_result.w_ord:
            raise EngineInvariantError("J′ demandé avec max w-ord = 0", {"chart": chart.id})
        b = state.threshold
        b_k = w_result.order
        if b_k >= b:
            return w_result.weak, b_k
        powers = {}
        for label, a in w_result.multiplicities:
            divisor = chart.divisor(label)
            if a and divisor is not None:
                powers[divisor.coordinate_index] = a * b_k
        monomial_part = Ideal.of(state.ideal.ring, [coordinate_monomial(state.ideal.ring, powers)])
        weak_part = _power(w_result.weak, b - b_k)
        return groebner_basis(ideal_sum(weak_part, monomial_part)), b_k * (b - b_k)

    @staticmethod
    def make_j_double_prime(j_prime: Ideal, b_prime: int, t_result: TResult, chart: Chart) -> Tuple[Ideal, int, FrozenSet[int]]:
        """
        J″ = J′ + ∏ (I(H_{s_1}) + ... + I(H_{s_n}))^{b′} sur les n-parties de E⁻.

        Returns:
            (J″, b″ = b′, labels de E⁺ qui forment le bord de la descente)
        """
        n = t_result.value.n
        e_plus = frozenset(t_result.e_plus)
        if n == 0:
            return j_prime, b_prime, e_plus
        coordinates = [chart.divisor(label).coordinate_index for label in t_result.e_minus]
        product: Optional[Ideal] = None
        for subset in combinations(sorted(coordinates), n):
            factor = _coordinate_power(j_prime.ring, subset, b_prime)
            product = factor if product is None else groebner_basis(ideal_product(product, factor))
        return groebner_basis(ideal_sum(j_prime, product)), b_prime, e_plus

    # =========================================================================
    # CONTACT MAXIMAL ET IDÉAL COEFFICIENT
    # =========================================================================

    @staticmethod
    def find_maximal_contact(
        j_double_prime: Ideal,
        b_double_prime: int,
        chart: Chart,
        flag: Tuple[int, ...],
        excluded: Iterable[int] = (),
    ) -> Tuple[int, Optional[CoordinateChange]]:
        """
        Hypersurface de contact maximal {x_j = 0} dans Δ^{b″−1}(J″).

        Premier passage : générateur c·x_j (plus petit j admissible).
        Second passage : générateur c·x_j + h, h sans x_j, rendu égal à x_j
        par x_j ↦ (x_j − h)/c ; x_j ne doit pas porter de diviseur.

        Args:
            excluded: Coordonnées interdites (diviseurs de E⁺)

        Raises:
            NonConvertibleError: Si aucun générateur n'est une coordonnée
        """
        delta = DeltaOrderService.delta_power(j_double_prime, b_double_prime - 1)
        candidates = list(reduced_generators(delta))
        candidates += [g for g in delta.generators if g not in candidates]
        blocked = set(flag) | set(excluded)
        eligible = [j for j in range(chart.ring.dimension) if j not in blocked]

        pure = set()
        for f in candidates:
            if f.is_term:
                (monom,) = f.itermonoms()
                if sum(monom) == 1:
                    pure.add(monom.index(1))
        for j in eligible:
            if j in pure:
                return j, None

        divisor_coordinates = chart.divisor_coordinates
        for j in eligible:
            if j in divisor_coordinates:
                continue
            for f in candidates:
                form = coordinate_form(f, j)
                if form is None:
                    continue
                c, h = form
                inverse = 1 / c
                return j, CoordinateChange.triangular(chart.ring, j, inverse, h * (-inverse))
        raise NonConvertibleError(delta.text())

    @staticmethod
    def coefficient_ideal(j_double_prime: Ideal, b_double_prime: int, hyperplane: int) -> Ideal:
        """
        C(J″) = Σ_{i<b″} Δ^i(J″)^{b″!/(b″−i)} restreint à {x_hyperplane = 0}.

        Raises:
            EngineInvariantError: Si la restriction est nulle
        """
        total = factorial(b_double_prime)
        parts = []
        for i in range(b_double_prime):
            restricted = restrict(DeltaOrderService.delta_power(j_double_prime, i), [hyperplane])
            if restricted.is_zero:
                continue
            parts.append(_power(groebner_basis(restricted), total // (b_double_prime - i)))
        if not parts:
            raise EngineInvariantError(
                "idéal coefficient nul",
                {"ideal": j_double_prime.text(), "hyperplane": hyperplane},
            )
        return groebner_basis(ideal_sum(*parts))

    @staticmethod
    def coefficient_ideal_descend(
        j_double_prime: Ideal,
        b_double_prime: int,
        hyperplane: int,
        state: BasicObjectState,
        stage: int,
        e_plus: FrozenSet[int],
    ) -> BasicObjectState:
        """Niveau e − 1 : (C(J″), b″!) sur {x_hyperplane = 0}, bord E⁺."""
        coefficient = ResolverService.coefficient_ideal(j_double_prime, b_double_prime, hyperplane)
        logger.debug(
            f"Descente sur x{hyperplane}: C = {coefficient.text()}, seuil {factorial(b_double_prime)}"
        )
        return BasicObjectState(
            chart_id=state.chart_id,
            ideal=coefficient,
            threshold=factorial(b_double_prime),
            flag=state.flag + (hyperplane,),
            created_stage=stage,
            initial_labels=frozenset(e_plus),
            drop_stage=stage,
        )

    @staticmethod
    def check_descent(record: DescentRecord) -> Tuple[bool, bool]:
        """
        Contrôles d'une descente.

        Returns:
            (Sing(J″, b″) ∩ H = Sing(C, b″!) ∩ H, J″ d'ordre au plus b″)
        """
        ring = record.j_double_prime.ring
        hyperplane = Ideal.coordinates(ring, record.flag + (record.hyperplane,))
        sing = DeltaOrderService.order_locus(record.j_double_prime, record.threshold)
        coefficient_sing = DeltaOrderService.order_locus(record.coefficient, factorial(record.threshold))
        same_locus = DeltaOrderService.equal_loci(
            ideal_sum(sing, hyperplane), ideal_sum(coefficient_sing, hyperplane)
        )
        simple = is_trivial(DeltaOrderService.delta_power(record.j_double_prime, record.threshold))
        return same_locus, simple

    # =========================================================================
    # PARTIE DE CODIMENSION UN
    # =========================================================================

    @staticmethod
    def r1_extract(locus: Ideal, state: BasicObjectState, chart: Chart) -> Optional[Tuple[int, Optional[CoordinateChange]]]:
        """
        Partie de codimension un du lieu Max t, rendue coordonnée.

        Returns:
            (j, changement éventuel) tel que la partie soit {x_j = 0}, ou
            None si le pgcd des générateurs est constant

        Raises:
            DivisorialPartNotSmoothError: Partie non lisse ou sans croisements normaux
            NonCoordinateCenterError: Partie lisse non convertible en coordonnée
        """
        g = gcd_of(reduced_generators(locus))
        if g is None or g.is_ground:
            return None
        g = square_free_part(g)
        ring = chart.ring
        text = format_polynomial(g)

        gradient = [partial_derivative(g, i) for i in range(ring.dimension)]
        if not is_trivial(Ideal.of(ring, [g] + gradient)):
            raise DivisorialPartNotSmoothError(text)

        for divisor in state.boundary(chart):
            k = divisor.coordinate_index
            part = g
            if coordinate_valuation(part, k):
                part = divide_by_coordinate(part, k, 1)
            if part.is_ground:
                continue
            transversal = [part, ring.gen(k)] + [
                partial_derivative(part, i) for i in range(ring.dimension) if i != k
            ]
            if not is_trivial(Ideal.of(ring, transversal)):
                raise DivisorialPartNotSmoothError(text, f"croisements non normaux avec H{divisor.label}")

        divisor_coordinates = chart.divisor_coordinates
        for j in range(ring.dimension):
            if j in state.flag:
                continue
            form = coordinate_form(g, j)
            if form is None:
                continue
            c, h = form
            if not h:
                return j, None
            if j in divisor_coordinates:
                continue
            inverse = 1 / c
            return j, CoordinateChange.triangular(ring, j, inverse, h * (-inverse))

        center = ideal_sum(Ideal.of(ring, [g]), Ideal.coordinates(ring, state.flag))
        raise NonCoordinateCenterError(center.text(), center=center)

    # =========================================================================
    # ÉVALUATION D'UNE TOUR
    # =========================================================================

    @staticmethod
    def _center(chart: Chart, coordinates: Iterable[int], depth: int, labels: Tuple[int, ...] = ()) -> Center:
        members = tuple(sorted(set(coordinates)))
        return Center(members, Ideal.coordinates(chart.ring, members), depth, labels)

    @staticmethod
    def _apply_change(
        chart: Chart,
        change: CoordinateChange,
        levels: List[BasicObjectState],
        extra: Sequence[Ideal] = (),
    ) -> Tuple[Chart, List[BasicObjectState], List[Ideal]]:
        ideals = [level.ideal for level in levels] + list(extra)
        chart, changed = ChartService.apply_coordinate_change(chart, change, ideals)
        updated = [replace(level, ideal=ideal) for level, ideal in zip(levels, changed)]
        return chart, updated, changed[len(levels):]

    @staticmethod
    def evaluate_tower(chart: Chart, tower: Tower, stage: int) -> ChartEvaluation:
        """
        Évalue la tour d'une carte et choisit son centre.

        Descend tant que le lieu Max t n'a pas de partie de codimension un
        et que le niveau n'est pas monomial. Un niveau porté depuis l'étape
        précédente est réutilisé si t est inchangé au niveau du dessus.

        Raises:
            NonConvertibleError: Aucune hypersurface de contact maximal coordonnée
            NonCoordinateCenterError: Centre lisse non coordonné
            DivisorialPartNotSmoothError: Partie de codimension un invalide
        """
        levels = list(tower.levels)
        records: List[LevelRecord] = []
        descents: List[DescentRecord] = []
        t_values = []
        depth = 0

        def finish(kind: StepKind, trace, center: Optional[Center], multiplicities=None) -> ChartEvaluation:
            outcome = StepOutcome(kind=kind, trace=trace, center=center)
            return ChartEvaluation(
                chart=chart,
                tower=Tower(chart.id, tuple(levels)),
                outcome=outcome,
                stage=stage,
                descents=tuple(descents),
                levels=tuple(records),
                monomial_multiplicities=multiplicities or {},
            )

        while True:
            before = levels[depth]
            sing = InvariantService.sing_locus(before)
            if is_trivial(sing):
                if depth:
                    raise EngineInvariantError(
                        "niveau de descente sans lieu singulier",
                        {"chart": chart.id, "depth": depth, "ideal": before.ideal.text()},
                    )
                levels = levels[:1]
                return finish(StepKind.RESOLVED, InvariantService.fd_assemble([], TraceTerminal.RESOLVED), None)

            w_result = InvariantService.max_w_ord(before, chart, sing)

            if not w_result.w_ord:
                state = InvariantService.record_w_ord(before, w_result.w_ord, stage)
                levels[depth] = state
                levels = levels[:depth + 1]
                gamma, coordinates, labels = InvariantService.gamma_max(w_result.monomial)
                records.append(LevelRecord(depth, w_result.w_ord, gamma=gamma))
                center = ResolverService._center(chart, coordinates + state.flag, depth, labels)
                trace = InvariantService.fd_assemble(t_values, TraceTerminal.GAMMA, gamma)
                return finish(StepKind.MONOMIAL_ENDGAME, trace, center, w_result.monomial.multiplicities)

            t_result = InvariantService.t_state(before, chart, w_result, stage)
            state = t_result.state
            levels[depth] = state
            t_values.append(t_result.value)
            records.append(LevelRecord(
                depth=depth,
                w_ord=w_result.w_ord,
                t=t_result.value,
                e_minus=t_result.e_minus,
                e_plus=t_result.e_plus,
                locus=t_result.locus,
            ))

            extracted = ResolverService.r1_extract(t_result.locus, state, chart)
            if extracted is not None:
                j, change = extracted
                levels = levels[:depth + 1]
                if change is not None:
                    chart, levels, _ = ResolverService._apply_change(chart, change, levels)
                    state = levels[depth]
                center = ResolverService._center(chart, (j,) + state.flag, depth)
                kind = StepKind.CASE_A_CENTER if depth == 0 else StepKind.CASE_B_DESCENDED_CENTER
                return finish(kind, InvariantService.fd_assemble(t_values, TraceTerminal.DIVISOR_MARKER), center)

            carried = levels[depth + 1] if len(levels) > depth + 1 else None
            unchanged = before.last_t is not None and tuple(before.last_t) == (t_result.value.w_ord, t_result.value.n)
            if carried is not None and unchanged and not is_trivial(InvariantService.sing_locus(carried)):
                logger.debug(f"Carte {chart.id}: niveau {depth + 1} porté (t inchangé)")
                depth += 1
                continue

            levels = levels[:depth + 1]
            j_prime, b_prime = ResolverService.make_j_prime(state, chart, w_result)
            j_double_prime, b_double_prime, e_plus = ResolverService.make_j_double_prime(
                j_prime, b_prime, t_result, chart
            )
            excluded = [chart.divisor(label).coordinate_index for label in e_plus]
            hyperplane, change = ResolverService.find_maximal_contact(
                j_double_prime, b_double_prime, chart, state.flag, excluded
            )
            if change is not None:
                chart, levels, (j_double_prime,) = ResolverService._apply_change(
                    chart, change, levels, [j_double_prime]
                )
                state = levels[depth]
            child = ResolverService.coefficient_ideal_descend(
                j_double_prime, b_double_prime, hyperplane, state, stage, e_plus
            )
            record = DescentRecord(
                depth=depth,
                j_double_prime=j_double_prime,
                threshold=b_double_prime,
                hyperplane=hyperplane,
                flag=state.flag,
                coefficient=child.ideal,
                change=change,
            )
            if settings.verify_descents:
                same_locus, simple = ResolverService.check_descent(record)
                if not (same_locus and simple):
                    logger.error(f"Descente invalide sur la carte {chart.id}, niveau {depth}")
                    raise EngineInvariantError(
                        "descente infidèle",
                        {"chart": chart.id, "depth": depth, "locus": same_locus, "simple": simple},
                    )
            descents.append(record)
            levels.append(child)
            depth += 1
