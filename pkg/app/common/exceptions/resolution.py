"""
Exceptions du moteur de résolution

Ce module définit la hiérarchie d'exceptions partagée par l'arithmétique,
les cartes, les invariants, le résolveur et les drivers.
"""

from enum import Enum
from typing import Any, Dict, Optional


class HaltReason(str, Enum):
    """Motifs d'arrêt d'une branche enregistrés dans l'arbre."""
    NON_CONVERTIBLE = "NonConvertible"
    NON_COORDINATE_CENTER = "NonCoordinateCenter"
    DIVISORIAL_NOT_SMOOTH = "DivisorialPartNotSmooth"
    STAGE_CAP = "StageCap"


class ResolutionError(Exception):
    """Erreur de base du moteur."""

    def __init__(self, message: str = "Resolution error"):
        self.message = message
        super().__init__(self.message)


# === Arithmétique ===

class RingMismatchError(ResolutionError):
    """Opérandes issus d'anneaux différents."""

    def __init__(self, left: str, right: str):
        self.left = left
        self.right = right
        super().__init__(f"Anneaux incompatibles: {left} / {right}")


class ZeroIdealError(ResolutionError):
    """Idéal (ou polynôme) nul là où un objet non nul est requis."""

    def __init__(self, context: str):
        self.context = context
        super().__init__(f"Idéal nul non autorisé: {context}")


class InvalidIndexError(ResolutionError):
    """Indice de variable hors de l'anneau."""

    def __init__(self, index: int, dimension: int):
        self.index = index
        self.dimension = dimension
        super().__init__(f"Indice de variable invalide: {index} (dimension {dimension})")


class DeltaCapExceededError(ResolutionError):
    """La chaîne Δ n'est pas devenue triviale avant le plafond."""

    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"Chaîne Δ non triviale après {cap} extensions")


# === Cartes ===

class NotDivisibleError(ResolutionError):
    """Le tiré en arrière n'est pas divisible par x_exc^b (centre hors de Sing)."""

    def __init__(self, coordinate: int, valuation: int, threshold: int):
        self.coordinate = coordinate
        self.valuation = valuation
        self.threshold = threshold
        super().__init__(
            f"Transformée contrôlée impossible: valuation {valuation} < {threshold} "
            f"selon la variable {coordinate}"
        )


class NonInvertibleChangeError(ResolutionError):
    """Changement de coordonnées non inversible."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Changement de coordonnées non inversible: {reason}")


class NonConvertibleError(ResolutionError):
    """Aucune hypersurface de contact maximal n'est une coordonnée."""

    def __init__(self, ideal_text: str, reason: Optional[str] = None):
        self.ideal_text = ideal_text
        self.reason = reason
        message = f"Aucun générateur convertible en coordonnée dans {ideal_text}"
        if reason:
            message = f"{message} ({reason})"
        super().__init__(message)


class NonCoordinateCenterError(NonConvertibleError):
    """Centre lisse qui n'est pas un sous-espace de coordonnées de la carte."""

    def __init__(self, center_text: str, center: Any = None):
        self.center_text = center_text
        self.center = center  # Ideal du centre, quand il est connu
        super().__init__(center_text, reason="centre lisse non coordonné")


class DivisorialPartNotSmoothError(ResolutionError):
    """Partie de codimension un du lieu Max t non lisse ou sans croisements normaux."""

    def __init__(self, divisor_text: str, reason: str = "non lisse"):
        self.divisor_text = divisor_text
        self.reason = reason
        super().__init__(f"Partie divisorielle {divisor_text}: {reason}")


# === Invariants ===

class SubsetCapExceededError(ResolutionError):
    """Trop de diviseurs dans E⁻ pour une énumération exhaustive."""

    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"|E⁻| = {size} dépasse le plafond {cap}")


class SingEmptyError(ResolutionError):
    """Objet monomial sans point singulier."""

    def __init__(self, threshold: int):
        self.threshold = threshold
        super().__init__(f"Aucun sous-ensemble de diviseurs n'atteint b = {threshold}")


# === Résolveur ===

class EngineInvariantError(ResolutionError):
    """Violation d'une propriété garantie par la théorie (bug du moteur)."""

    def __init__(self, what: str, details: Optional[Dict[str, Any]] = None):
        self.what = what
        self.details = details or {}
        super().__init__(f"Invariant du moteur violé: {what}")


class StageCapExceededError(ResolutionError):
    """Nombre d'étapes maximal atteint."""

    def __init__(self, cap: int, diagnostics: Optional[Dict[str, Any]] = None):
        self.cap = cap
        self.diagnostics = diagnostics or {}
        super().__init__(f"Plafond de {cap} étapes atteint")


class JacobianCheckFailedError(ResolutionError):
    """Le critère jacobien ne certifie pas la lissité de la transformée stricte."""

    def __init__(self, chart_id: int, ideal_text: str):
        self.chart_id = chart_id
        self.ideal_text = ideal_text
        super().__init__(
            f"Transformée stricte non lisse sur la carte {chart_id}: {ideal_text}"
        )


# === Drivers ===

class ProblemSyntaxError(ResolutionError):
    """Erreur de syntaxe dans un fichier problème."""

    def __init__(self, line: int, column: int, detail: str):
        self.line = line
        self.column = column
        self.detail = detail
        super().__init__(f"Ligne {line}, colonne {column}: {detail}")


class UnknownVariableError(ProblemSyntaxError):
    """Variable non déclarée dans la ligne vars."""

    def __init__(self, name: str, line: int, column: int = 1):
        self.name = name
        super().__init__(line, column, f"variable inconnue '{name}'")
