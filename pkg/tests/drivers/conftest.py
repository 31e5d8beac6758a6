"""
Fixtures des tests des drivers : textes de problèmes de référence.
"""
from pathlib import Path
from typing import Callable

import pytest

from app.features.exactpoly import Ring

CUSP = "vars: x y\nideal: x^2 - y^3\nb: 2\ntask: resolve\n"
TWO_PLANES = "vars: x1 x2 x3\nideal: x1, x2*x3\ntask: principalize\n"
MONOMIAL_X3Y3 = "vars: x y\nboundary: x y\nmults: x=3, y=3\nb: 2\ntask: monomial\n"
SMOOTH = "vars: x y\nideal: x - y^2\nb: 2\ntask: resolve\n"
CUBIC_WITH_BOUNDARY = (
    "vars: x1 x2 x3\nideal: x3^3 + x2*x3^2 + x1^3\nb: 2\nboundary: x3\ntask: resolve\nmaxStages: 1\n"
)


@pytest.fixture
def problem_file(tmp_path: Path) -> Callable[[str], Path]:
    """Écrit un texte de problème dans un fichier temporaire."""
    def write(text: str, name: str = "problem.txt") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path
    return write


@pytest.fixture
def plane() -> Ring:
    return Ring(("x", "y"))
