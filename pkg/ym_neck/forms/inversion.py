"""Pullbacks of constant two-forms under the inversion ``r(x) = x / |x|^2``."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ym_neck.geometry.quadrature import SphereGrid
from ym_neck.geometry.s3 import PHI_MINUS, PHI_PLUS, transition_values

LOGGER = logging.getLogger(__name__)

DEFAULT_RADII = (0.5, 1.0, 2.0)


def inversion(x: np.ndarray) -> np.ndarray:
    """The inversion ``x -> x / |x|^2``; undefined at the origin."""
    return x / np.sum(x * x, axis=-1, keepdims=True)


def inversion_jacobian(x: np.ndarray) -> np.ndarray:
    """``J = |x|^-2 (I - 2 x x^t / |x|^2)``, shape ``(..., 4, 4)``."""
    r2 = np.sum(x * x, axis=-1)[..., None, None]
    outer = x[..., :, None] * x[..., None, :]
    return (np.eye(4) - 2.0 * outer / r2) / r2


def pullback_constant(F: np.ndarray, jacobian: np.ndarray) -> np.ndarray:
    """Coefficients of the pullback ``J^t F J`` (F may be stacked)."""
    return np.einsum("...ma,...mn,...nb->...ab", jacobian, F, jacobian)


@dataclass(frozen=True)
class InversionReport:
    """Residuals of the inversion identities."""

    max_residual: float  # r^* Phi_{+,i} against |x|^-4 T Phi_{-,i}
    pole_residual: float  # r^* Phi_{+,i} at e_1 against -Phi_{-,i}
    involution_residual: float  # pulling back twice returns the form
    points: int

    def passed(self, tolerance: float) -> bool:
        return max(self.max_residual, self.pole_residual, self.involution_residual) < tolerance


def verify_inversion(grid: SphereGrid, radii: Sequence[float] = DEFAULT_RADII) -> InversionReport:
    """Check ``r^* Phi_{+,i} = |x|^-4 sum_j T_ij Phi_{-,j}`` on scaled grid nodes."""
    x = np.concatenate([r * grid.nodes for r in radii], axis=0)
    J = inversion_jacobian(x)[:, None]  # broadcast over the three forms
    pulled = pullback_constant(PHI_PLUS[None], J)
    unit = x / np.linalg.norm(x, axis=-1, keepdims=True)
    T = transition_values(unit)
    r4 = np.sum(x * x, axis=-1) ** 2
    expected = np.einsum("nij,jab->niab", T, PHI_MINUS) / r4[:, None, None, None]
    scale = 1.0 / r4[:, None, None, None]
    max_residual = float(np.max(np.abs(pulled - expected) / scale))

    e1 = np.array([1.0, 0.0, 0.0, 0.0])
    pole = pullback_constant(PHI_PLUS, inversion_jacobian(e1)[None])
    pole_residual = float(np.max(np.abs(pole + PHI_MINUS)))

    twice = pullback_constant(
        pullback_constant(PHI_PLUS[None], inversion_jacobian(inversion(x))[:, None]),
        J,
    )
    involution_residual = float(np.max(np.abs(twice - PHI_PLUS[None])))

    LOGGER.debug(
        "Inversion check on %d points: residual=%.3e pole=%.3e involution=%.3e",
        x.shape[0],
        max_residual,
        pole_residual,
        involution_residual,
    )
    return InversionReport(max_residual, pole_residual, involution_residual, int(x.shape[0]))
