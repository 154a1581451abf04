"""Exception hierarchy for ym-neck.

Every error carries the CLI exit code it maps to. Invalid-input errors also
derive from ``ValueError`` so callers that only know about the builtin keep
working.
"""

from typing import Optional


class YmNeckError(Exception):
    """Base class for all ym-neck errors."""

    exit_code = 1


class InputError(YmNeckError, ValueError):
    """Malformed input: bad index, shape, grid or dimension mismatch, bad file."""

    exit_code = 4


class ResonanceError(InputError):
    """The decay rate alpha coincides with a mode rate."""


class ResolutionError(YmNeckError, ValueError):
    """A grid is too coarse for the requested quadrature or stencil."""

    exit_code = 3


class DegenerateFitError(YmNeckError, ValueError):
    """A regression has no information (all-zero data or collinear design)."""

    exit_code = 4


class OutOfBasisError(InputError):
    """Input carries more energy outside the implemented mode table than allowed."""

    def __init__(self, message: str, fraction: Optional[float] = None):
        super().__init__(message)
        self.fraction = fraction


class NotHarmonicError(InputError):
    """A one-form expected to be harmonic is not, within threshold."""

    def __init__(self, message: str, residual: Optional[float] = None):
        super().__init__(message)
        self.residual = residual
