"""
DESING - Point d'entrée principal

Interface en ligne de commande du moteur de désingularisation :

    python -m app.main problem.txt --emit json --max-stages 16
    python -m app.main --seed-corpus

Codes de sortie : 0 succès, 1 exécution terminée avec des feuilles
arrêtées (ou corpus en échec), 2 erreur d'entrée.
"""
import argparse
import dataclasses
import logging
import sys
from pathlib import Path
from typing import List, Optional

from prometheus_client import REGISTRY, write_to_textfile

from app.common.exceptions import InvalidIndexError, ProblemSyntaxError, ResolutionError, ZeroIdealError
from app.core.config import settings
from app.features.drivers import DriverService, emit_tree, parse_problem, run_seed_corpus

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_HALTED = 1
EXIT_INPUT = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="desing", description="Constructive resolution of singularities over Q")
    parser.add_argument("input", nargs="?", help="Problem file (vars/ideal/b/boundary/task lines)")
    parser.add_argument("--emit", choices=["text", "json"], default=settings.emit_format)
    parser.add_argument("--max-stages", type=int, default=None, help="Override the problem's maxStages")
    parser.add_argument("--trace", action="store_true", help="Include the full f^d trace of every stage")
    parser.add_argument("--seed-corpus", action="store_true", help="Run the built-in golden problems")
    parser.add_argument("--metrics-file", type=Path, default=None, help="Write Prometheus metrics to this file")
    parser.add_argument("--log-level", default=settings.log_level)
    parser.add_argument("--output", type=Path, default=None, help="Write the emission here instead of stdout")
    return parser


def _write(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text, encoding="utf-8")
        logger.info(f"Émission écrite dans {output}")


def run_corpus(output: Optional[Path]) -> int:
    results = run_seed_corpus()
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}" for r in results]
    passed = sum(1 for r in results if r.passed)
    lines.append(f"{passed}/{len(results)} passed")
    _write("\n".join(lines) + "\n", output)
    return EXIT_OK if passed == len(results) else EXIT_HALTED


def run_problem(args: argparse.Namespace) -> int:
    try:
        text = Path(args.input).read_text(encoding="utf-8")
        problem = parse_problem(text)
        if args.max_stages is not None:
            if args.max_stages < 1:
                raise ValueError(f"--max-stages attend un entier ≥ 1, reçu {args.max_stages}")
            problem = dataclasses.replace(problem, max_stages=args.max_stages)
    except (OSError, ValueError, ProblemSyntaxError, ZeroIdealError, InvalidIndexError) as e:
        logger.error(f"Entrée invalide: {getattr(e, 'message', e)}")
        return EXIT_INPUT

    try:
        tree = DriverService.run(problem)
    except ResolutionError as e:
        logger.error(f"Exécution interrompue: {e.message}")
        return EXIT_HALTED

    _write(emit_tree(tree, args.emit, trace=args.trace), args.output)
    halted = tree.halted()
    if halted:
        logger.warning(f"{len(halted)} feuilles arrêtées")
        return EXIT_HALTED
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    # Configuration du logging
    logging.basicConfig(
        level=args.log_level.upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )
    logger.info(f"Starting {settings.app_name} {settings.app_version}...")

    if not args.seed_corpus and args.input is None:
        parser.print_usage(sys.stderr)
        logger.error("Fichier problème manquant")
        return EXIT_INPUT

    try:
        return run_corpus(args.output) if args.seed_corpus else run_problem(args)
    finally:
        if args.metrics_file is not None:
            write_to_textfile(str(args.metrics_file), REGISTRY)
            logger.info(f"Métriques écrites dans {args.metrics_file}")


if __name__ == "__main__":
    sys.exit(main())
