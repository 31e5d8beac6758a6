"""
Exceptions - Exports
"""
from app.common.exceptions.resolution import (
    HaltReason,
    ResolutionError,
    # Arithmétique
    RingMismatchError,
    ZeroIdealError,
    InvalidIndexError,
    DeltaCapExceededError,
    # Cartes
    NotDivisibleError,
    NonInvertibleChangeError,
    NonConvertibleError,
    NonCoordinateCenterError,
    DivisorialPartNotSmoothError,
    # Invariants
    SubsetCapExceededError,
    SingEmptyError,
    # Résolveur
    EngineInvariantError,
    StageCapExceededError,
    JacobianCheckFailedError,
    # Drivers
    ProblemSyntaxError,
    UnknownVariableError,
)

__all__ = [
    "HaltReason",
    "ResolutionError",
    "RingMismatchError",
    "ZeroIdealError",
    "InvalidIndexError",
    "DeltaCapExceededError",
    "NotDivisibleError",
    "NonInvertibleChangeError",
    "NonConvertibleError",
    "NonCoordinateCenterError",
    "DivisorialPartNotSmoothError",
    "SubsetCapExceededError",
    "SingEmptyError",
    "EngineInvariantError",
    "StageCapExceededError",
    "JacobianCheckFailedError",
    "ProblemSyntaxError",
    "UnknownVariableError",
]
