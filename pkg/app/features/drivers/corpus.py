"""
Corpus de référence

Problèmes dont le premier centre (ou la suite des centres, pour la fin de
partie monomiale) est connu à la main ; `--seed-corpus` les rejoue.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from app.common.exceptions import ResolutionError
from app.features.drivers.parser import parse_polynomial, parse_problem
from app.features.drivers.schemas import Task
from app.features.drivers.service import DriverService
from app.features.exactpoly import Ideal, ideal_equals

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorpusCase:
    name: str
    text: str
    first_center: Tuple[str, ...] = ()
    centers: Optional[Tuple[str, ...]] = None


@dataclass(frozen=True)
class CorpusResult:
    name: str
    passed: bool
    detail: str


SEED_CORPUS: Tuple[CorpusCase, ...] = (
    CorpusCase(
        "cusp",
        "vars: x y\nideal: x^2 - y^3\nb: 2\ntask: resolve\n",
        first_center=("x", "y"),
    ),
    CorpusCase(
        "parabola",
        "vars: x y\nideal: x^2\nb: 2\ntask: resolve\n",
        first_center=("x",),
    ),
    CorpusCase(
        "two-planes-principalization",
        "vars: x1 x2 x3\nideal: x1, x2*x3\ntask: principalize\n",
        first_center=("x1", "x2", "x3"),
    ),
    CorpusCase(
        "quartic-with-boundary",
        "vars: x1 x2 x3 x4\nideal: x4^2 + x3^3 + x2*x3^2 + x1^3\nb: 2\nboundary: x3\ntask: resolve\nmaxStages: 1\n",
        first_center=("x1", "x3", "x4"),
    ),
    CorpusCase(
        "cubic-with-boundary",
        "vars: x1 x2 x3\nideal: x3^3 + x2*x3^2 + x1^3\nb: 2\nboundary: x3\ntask: resolve\nmaxStages: 1\n",
        first_center=("x1", "x2", "x3"),
    ),
    CorpusCase(
        "umbrella",
        "vars: x y z\nideal: x^2 - y^2*z\ntask: principalize\nmaxStages: 1\n",
        first_center=("x", "y", "z"),
    ),
    CorpusCase(
        "monomial-x3y3",
        "vars: x y\nboundary: x y\nmults: x=3, y=3\nb: 2\ntask: monomial\n",
        centers=("H2", "H1", "H3∩H4"),
    ),
)


def run_case(case: CorpusCase) -> CorpusResult:
    """Rejoue un cas et compare au résultat attendu."""
    try:
        problem = parse_problem(case.text)
        tree = DriverService.run(problem)
    except ResolutionError as e:
        return CorpusResult(case.name, False, f"erreur: {e.message}")

    if case.centers is not None:
        found = tuple(summary.centers[0][1] for summary in tree.stages)
        if found != case.centers:
            return CorpusResult(case.name, False, f"centres {list(found)}, attendus {list(case.centers)}")
        return CorpusResult(case.name, True, " -> ".join(found))

    centers = tree.centers_at(0)
    if len(centers) != 1:
        return CorpusResult(case.name, False, f"{len(centers)} centres à l'étape 0")
    ring = problem.ring
    expected = Ideal.of(ring, [parse_polynomial(source, ring) for source in case.first_center])
    if not ideal_equals(centers[0].ideal, expected):
        return CorpusResult(case.name, False, f"centre {centers[0].ideal.text()}, attendu {expected.text()}")
    if problem.task == Task.PRINCIPALIZE and tree.halted() and problem.max_stages is None:
        return CorpusResult(case.name, False, f"{len(tree.halted())} feuilles arrêtées")
    return CorpusResult(case.name, True, centers[0].ideal.text())


def run_seed_corpus(cases: Tuple[CorpusCase, ...] = SEED_CORPUS) -> List[CorpusResult]:
    results = []
    for case in cases:
        result = run_case(case)
        if result.passed:
            logger.info(f"Corpus {case.name}: OK ({result.detail})")
        else:
            logger.warning(f"Corpus {case.name}: ÉCHEC ({result.detail})")
        results.append(result)
    return results
