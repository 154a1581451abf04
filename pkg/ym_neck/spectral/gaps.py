"""Spectral gaps of the round S^3 and the decay exponents they allow."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from ym_neck.core.errors import InputError, ResonanceError

ALPHA1_LOWER = math.sqrt(3.0) + 1.0
ALPHA1_UPPER = math.sqrt(8.0)
RESONANCE_TOLERANCE = 1e-9
DEFAULT_ALPHA1 = 2.8

# Materialized eigenvalues of the Laplacians, with the first value above the gap
SCALAR_EIGENVALUES: Tuple[float, ...] = (0.0, 3.0, 8.0)
ONE_FORM_EIGENVALUES: Tuple[float, ...] = (3.0, 4.0, 8.0)


class WeightedNormKind(Enum):
    """Weighted Hoelder norms on the neck, all weighted by ``eta^-alpha2``."""

    X1 = "x1"  # Functions, Hoelder order alpha1
    X2 = "x2"  # One-forms, Hoelder order alpha2
    X3 = "x3"  # Functions, Hoelder order alpha3

    @classmethod
    def parse(cls, value) -> "WeightedNormKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError as e:
            raise InputError(f"Unknown weighted norm: {value!r}") from e


@dataclass(frozen=True)
class SpectralGaps:
    """The exponents ``alpha1 in (sqrt3 + 1, sqrt8)``, ``alpha2 = alpha1 - 1``, ``alpha3 = alpha1 - 2``."""

    alpha1: float = DEFAULT_ALPHA1

    def __post_init__(self):
        if not ALPHA1_LOWER < self.alpha1 < ALPHA1_UPPER:
            raise InputError(
                f"alpha1={self.alpha1} must lie in ({ALPHA1_LOWER:.6f}, {ALPHA1_UPPER:.6f})"
            )

    @property
    def alpha2(self) -> float:
        return self.alpha1 - 1.0

    @property
    def alpha3(self) -> float:
        return self.alpha1 - 2.0

    @property
    def mode_rates(self) -> Tuple[float, ...]:
        """Distinct ``sqrt(eigenvalue)`` over both tables."""
        values = sorted(set(SCALAR_EIGENVALUES) | set(ONE_FORM_EIGENVALUES))
        return tuple(math.sqrt(v) for v in values)

    def norm_exponents(self, kind: WeightedNormKind) -> Tuple[float, float]:
        """``(hoelder order, weight exponent)`` of a weighted norm."""
        order = {
            WeightedNormKind.X1: self.alpha1,
            WeightedNormKind.X2: self.alpha2,
            WeightedNormKind.X3: self.alpha3,
        }[WeightedNormKind.parse(kind)]
        return order, self.alpha2

    def check_alpha(self, alpha: float) -> None:
        """Raise unless ``alpha`` is positive and differs from every mode rate.

        Raises:
            InputError: for non-positive alpha
            ResonanceError: if alpha equals a tabulated rate
        """
        if not alpha > 0:
            raise InputError(f"alpha must be positive, got {alpha}")
        for rate in self.mode_rates:
            if abs(alpha - rate) <= RESONANCE_TOLERANCE:
                raise ResonanceError(f"resonance: alpha={alpha} equals the mode rate {rate:.12g}")
