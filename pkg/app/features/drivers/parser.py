"""
Lecture des fichiers problème

Format ligne à ligne `clé: valeur` (UTF-8) :

    vars: x y
    ideal: x^2 - y^3
    b: 2
    boundary: y
    task: resolve
    maxStages: 16
    mults: y=3

Les polynômes acceptent entiers, rationnels, +, -, *, ^ et parenthèses ;
ils sont lus par sympy puis convertis dans l'anneau ℚ[vars].
"""
import logging
import re
from tokenize import TokenError
from typing import Dict, List, Tuple

from sympy import Float
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.polyerrors import PolynomialError

from app.common.exceptions import ProblemSyntaxError, UnknownVariableError, ZeroIdealError
from app.core.config import settings
from app.features.drivers.schemas import Problem, Task
from app.features.exactpoly import Ideal, Polynomial, Ring, coordinate_monomial

logger = logging.getLogger(__name__)

KEYS = ("vars", "ideal", "b", "boundary", "task", "maxStages", "mults")
TRANSFORMATIONS = standard_transformations + (convert_xor,)

_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_FORBIDDEN = re.compile(r"[^A-Za-z0-9_+\-*/^(). \t]")
_FLOAT = re.compile(r"\d*\.\d")


# =============================================================================
# LIGNES
# =============================================================================

Entry = Tuple[int, int, str]  # (ligne, colonne de la valeur, valeur)


def _split_lines(text: str) -> Dict[str, Entry]:
    """Découpe le texte en entrées `clé -> (ligne, colonne, valeur)`."""
    entries: Dict[str, Entry] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ProblemSyntaxError(number, 1, "ligne sans ':'")
        name = key.strip()
        if name not in KEYS:
            raise ProblemSyntaxError(number, len(key) - len(key.lstrip()) + 1, f"clé inconnue '{name}'")
        if name in entries:
            raise ProblemSyntaxError(number, 1, f"clé '{name}' répétée")
        column = len(key) + 2 + len(value) - len(value.lstrip())
        entries[name] = (number, column, value.strip())
    return entries


def _split_items(value: str, column: int) -> List[Tuple[int, str]]:
    """Sépare sur les virgules hors parenthèses, avec la colonne de chaque élément."""
    items = []
    depth, start = 0, 0
    for position, char in enumerate(value + ","):
        if char == "(":
            depth += 1
        elif char == ")":
            depth -= 1
        elif char == "," and depth == 0:
            piece = value[start:position]
            stripped = piece.lstrip()
            items.append((column + start + len(piece) - len(stripped), stripped.rstrip()))
            start = position + 1
    return items


def _natural(entry: Entry, what: str, minimum: int = 1) -> int:
    number, column, value = entry
    if not value.isdigit() or int(value) < minimum:
        raise ProblemSyntaxError(number, column, f"{what} attend un entier ≥ {minimum}, reçu '{value}'")
    return int(value)


def _names(entry: Entry, ring: Ring) -> List[int]:
    """Indices des variables d'une ligne de noms (bord)."""
    number, column, value = entry
    indices = []
    for match in re.finditer(r"[^\s,]+", value):
        name = match.group()
        if name not in ring.variable_names:
            raise UnknownVariableError(name, number, column + match.start())
        index = ring.variable_names.index(name)
        if index in indices:
            raise ProblemSyntaxError(number, column + match.start(), f"variable '{name}' répétée")
        indices.append(index)
    return indices


# =============================================================================
# POLYNOMES
# =============================================================================

def parse_polynomial(source: str, ring: Ring, line: int = 1, column: int = 1) -> Polynomial:
    """
    Lit un polynôme de ℚ[vars].

    Raises:
        UnknownVariableError: Identifiant absent de `vars`
        ProblemSyntaxError: Caractère interdit, expression mal formée ou non polynomiale
    """
    if not source:
        raise ProblemSyntaxError(line, column, "polynôme vide")
    forbidden = _FORBIDDEN.search(source)
    if forbidden:
        raise ProblemSyntaxError(line, column + forbidden.start(), f"caractère interdit '{forbidden.group()}'")
    decimal = _FLOAT.search(source)
    if decimal:
        raise ProblemSyntaxError(line, column + decimal.start(), "coefficients décimaux non acceptés")
    for match in _IDENTIFIER.finditer(source):
        if match.group() not in ring.variable_names:
            raise UnknownVariableError(match.group(), line, column + match.start())

    symbols = {name: symbol for name, symbol in zip(ring.variable_names, ring.poly_ring.symbols)}
    try:
        expr = parse_expr(source, local_dict=symbols, transformations=TRANSFORMATIONS)
    except (SyntaxError, TokenError, TypeError) as e:
        offset = getattr(e, "offset", None)
        position = offset - 1 if isinstance(offset, int) and 0 < offset <= len(source) else len(source)
        raise ProblemSyntaxError(line, column + position, f"expression mal formée '{source}'")
    if expr.atoms(Float):
        raise ProblemSyntaxError(line, column, "coefficients décimaux non acceptés")
    try:
        return ring.poly_ring.from_expr(expr)
    except (ValueError, PolynomialError):
        raise ProblemSyntaxError(line, column, f"expression non polynomiale '{source}'")


# =============================================================================
# PROBLEME
# =============================================================================

def parse_problem(text: str) -> Problem:
    """
    Lit et valide un fichier problème.

    Args:
        text: Contenu du fichier

    Returns:
        Problem validé

    Raises:
        ProblemSyntaxError: Ligne mal formée (ligne, colonne)
        UnknownVariableError: Variable non déclarée
        ZeroIdealError: Tous les générateurs sont nuls
    """
    entries = _split_lines(text)
    if "vars" not in entries:
        raise ProblemSyntaxError(1, 1, "ligne 'vars:' manquante")

    number, column, value = entries["vars"]
    names = []
    for match in re.finditer(r"[^\s,]+", value):
        name = match.group()
        if not _IDENTIFIER.fullmatch(name) or name in names:
            raise ProblemSyntaxError(number, column + match.start(), f"nom de variable invalide '{name}'")
        names.append(name)
    if not names:
        raise ProblemSyntaxError(number, column, "aucune variable déclarée")
    ring = Ring(tuple(names), settings.term_order)

    task = Task.RESOLVE
    if "task" in entries:
        number, column, value = entries["task"]
        try:
            task = Task(value)
        except ValueError:
            raise ProblemSyntaxError(number, column, f"tâche inconnue '{value}'")

    threshold = _natural(entries["b"], "b") if "b" in entries else 1
    max_stages = _natural(entries["maxStages"], "maxStages") if "maxStages" in entries else None
    boundary = _names(entries["boundary"], ring) if "boundary" in entries else []

    multiplicities: Dict[int, int] = {}
    if task == Task.MONOMIAL:
        ideal, boundary, multiplicities = _monomial_ideal(entries, ring, boundary)
    else:
        if "mults" in entries:
            logger.warning("Ligne 'mults:' ignorée hors de la tâche monomial")
        if "ideal" not in entries:
            raise ProblemSyntaxError(len(text.splitlines()) + 1, 1, "ligne 'ideal:' manquante")
        number, column, value = entries["ideal"]
        generators = [
            parse_polynomial(source, ring, number, item_column)
            for item_column, source in _split_items(value, column)
        ]
        ideal = Ideal.of(ring, generators)
        if ideal.is_zero:
            raise ZeroIdealError(f"ligne {number}")

    problem = Problem(
        ring=ring,
        ideal=ideal,
        threshold=threshold,
        boundary=tuple(boundary),
        task=task,
        max_stages=max_stages,
        multiplicities=multiplicities,
    )
    logger.info(
        f"Problème lu: {task.value} sur {' '.join(names)}, {ideal.text()}, b = {threshold}, "
        f"bord {list(problem.boundary_names)}"
    )
    return problem


def _monomial_ideal(entries: Dict[str, Entry], ring: Ring, boundary: List[int]):
    """Idéal ∏ x_j^{a_j} d'une ligne `mults: nom=a, ...`."""
    if "mults" not in entries:
        raise ProblemSyntaxError(entries["task"][0], 1, "la tâche monomial attend une ligne 'mults:'")
    if "ideal" in entries:
        logger.warning("Ligne 'ideal:' ignorée : l'idéal monomial vient de 'mults:'")
    number, column, value = entries["mults"]
    multiplicities: Dict[int, int] = {}
    for item_column, item in _split_items(value, column):
        name, sep, exponent = item.partition("=")
        name, exponent = name.strip(), exponent.strip()
        if not sep or not exponent.isdigit():
            raise ProblemSyntaxError(number, item_column, f"multiplicité mal formée '{item}'")
        if name not in ring.variable_names:
            raise UnknownVariableError(name, number, item_column)
        multiplicities[ring.variable_names.index(name)] = int(exponent)

    if not boundary:
        boundary = list(multiplicities)
    missing = [ring.variable_names[i] for i in boundary if i not in multiplicities]
    outside = [ring.variable_names[i] for i in multiplicities if i not in boundary]
    if missing or outside:
        raise ProblemSyntaxError(
            number, column, f"multiplicités et bord incohérents (manquantes {missing}, hors bord {outside})"
        )
    ideal = Ideal.of(ring, [coordinate_monomial(ring, multiplicities)])
    return ideal, boundary, {index: multiplicities[index] for index in boundary}
