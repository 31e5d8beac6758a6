"""
Module drivers - Tâches utilisateur et entrées/sorties.

Lecture des fichiers problème, principalisation, résolution plongée, fin
de partie monomiale, émission texte/JSON de l'arbre et corpus de référence.

Usage:
    from app.features.drivers import DriverService, emit_tree, parse_problem

    problem = parse_problem(open("cusp.txt").read())
    tree = DriverService.run(problem)
    print(emit_tree(tree, "json"))
"""
from app.features.drivers.corpus import SEED_CORPUS, CorpusCase, CorpusResult, run_case, run_seed_corpus
from app.features.drivers.emitter import (
    emit_json,
    emit_text,
    emit_tree,
    node_document,
    parse_json,
    stage_document,
    tree_document,
)
from app.features.drivers.parser import parse_polynomial, parse_problem
from app.features.drivers.schemas import Problem, Task
from app.features.drivers.service import DriverService, is_smooth

__all__ = [
    "SEED_CORPUS",
    "CorpusCase",
    "CorpusResult",
    "DriverService",
    "Problem",
    "Task",
    "emit_json",
    "emit_text",
    "emit_tree",
    "is_smooth",
    "node_document",
    "parse_json",
    "parse_polynomial",
    "parse_problem",
    "run_case",
    "run_seed_corpus",
    "stage_document",
    "tree_document",
]
