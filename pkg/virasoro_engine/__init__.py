"""Exact rational computations with modules over the Virasoro algebra."""
from .algebra_core import UEAElement, UEAWord, Vector, VirasoroModule, bracket, omega_operator
from .errors import (
    EngineError,
    FamilyMismatchError,
    InvalidInputError,
    LevelCapExceededError,
    NonCatalogFactorError,
    PreconditionError,
    WindowError,
)
from .models import SimplicityVerdict, Truncation
from .service import EngineTools, ModuleSpec

__all__ = [
    "EngineError",
    "EngineTools",
    "FamilyMismatchError",
    "InvalidInputError",
    "LevelCapExceededError",
    "ModuleSpec",
    "NonCatalogFactorError",
    "PreconditionError",
    "SimplicityVerdict",
    "Truncation",
    "UEAElement",
    "UEAWord",
    "Vector",
    "VirasoroModule",
    "WindowError",
    "bracket",
    "omega_operator",
]
