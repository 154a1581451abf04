"""Core utilities shared by every ym-neck subpackage."""

from .config_paths import ConfigPaths
from .errors import (
    DegenerateFitError,
    InputError,
    NotHarmonicError,
    OutOfBasisError,
    ResolutionError,
    ResonanceError,
    YmNeckError,
)

__all__ = [
    "ConfigPaths",
    "YmNeckError",
    "InputError",
    "ResolutionError",
    "ResonanceError",
    "DegenerateFitError",
    "OutOfBasisError",
    "NotHarmonicError",
]
