"""The stress-energy tensor of a curvature field and its divergence."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ym_neck.core.errors import InputError, OutOfBasisError
from ym_neck.fields.curvature import SAMPLED_BASIS_TOLERANCE, CurvatureField
from ym_neck.forms.calculus import CONNECTION, d_star_two_form
from ym_neck.geometry.flows import FIRST_STEP, t_derivative
from ym_neck.geometry.modes import project_onto_modes
from ym_neck.geometry.quadrature import CylinderGrid
from ym_neck.geometry.s3 import PHI_MINUS, linear_field

LOGGER = logging.getLogger(__name__)

StressEvaluator = Callable[[np.ndarray], np.ndarray]


def stress_components(W: np.ndarray, trace_scale: float) -> np.ndarray:
    """``S_ab = sum_m <W_am, W_bm> - 1/4 |F|^2 delta_ab`` for frame components ``W``.

    ``W`` has shape ``(..., 4, 4, n, n)``; the result has shape ``(..., 4, 4)``.
    """
    gram = np.einsum("...amij,...bmij->...ab", W, W) / trace_scale
    norm2 = np.einsum("...aa->...", gram)
    return gram - 0.25 * norm2[..., None, None] * np.eye(4)


@dataclass(frozen=True, eq=False)
class StressTensor:
    """Frame components ``S_ab`` on a cylinder grid, shape ``(nt, N, 4, 4)``.

    ``evaluator`` recomputes ``S`` at arbitrary ambient points when the
    underlying curvature came from an evaluable connection.
    """

    S: np.ndarray
    grid: CylinderGrid
    evaluator: Optional[StressEvaluator] = None

    def __post_init__(self):
        S = np.asarray(self.S, dtype=float)
        if S.shape != self.grid.shape + (4, 4):
            raise InputError(f"Stress samples {S.shape} do not match grid {self.grid.shape}")
        object.__setattr__(self, "S", S)

    def trace(self) -> np.ndarray:
        return np.einsum("tnaa->tn", self.S)

    def symmetry_defect(self) -> float:
        return float(np.max(np.abs(self.S - np.swapaxes(self.S, -1, -2)), initial=0.0))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.S), initial=0.0))


def stress_energy(F: CurvatureField) -> StressTensor:
    """The stress-energy tensor of ``F`` in the round cylinder metric."""
    scale = F.algebra.trace_scale
    S = stress_components(F.W, scale)
    evaluator = None
    if F.source is not None:
        source = F.source

        def evaluator(points: np.ndarray) -> np.ndarray:
            return stress_components(source.cylinder_curvature(points), scale)

    return StressTensor(S=S, grid=F.grid, evaluator=evaluator)


def _sampled_divergence(S: StressTensor, tolerance: float) -> np.ndarray:
    grid = S.grid
    sphere = grid.sphere
    projection = project_onto_modes(S.S, 0, sphere, lead_ndim=1)
    if projection.max_fraction > tolerance:
        raise OutOfBasisError(
            f"Stress samples have {projection.max_fraction:.3e} of their energy outside "
            "the scalar mode table; supply an evaluable curvature",
            fraction=projection.max_fraction,
        )
    frame = linear_field(PHI_MINUS, sphere.nodes)  # (N, 3, 4)
    # X_j S_ab from the omega coefficients
    sphere_grad = np.einsum("tiab,nji->tnjab", projection.coefficients[:, 1:], frame)
    divergence = t_derivative(S.S[:, :, 0, :], grid.spacing, axis=0)
    divergence = divergence + np.einsum("tnjjb->tnb", sphere_grad[:, :, :, 1:, :])
    return divergence - np.einsum("abc,tnac->tnb", CONNECTION, S.S)


def divergence_stress(
    S: StressTensor,
    grid: Optional[CylinderGrid] = None,
    h: float = FIRST_STEP,
    tolerance: float = SAMPLED_BASIS_TOLERANCE,
) -> np.ndarray:
    """``(div S)_b = sum_a E_a S_ab - sum_{a,c} Gamma_abc S_ac``, shape ``(nt, N, 4)``.

    An evaluable stress is differentiated along the frame flows; sampled
    stress is differentiated in t by finite differences and on the sphere
    through its scalar mode expansion.

    Raises:
        ResolutionError: if the t-grid or the flow step is too coarse
        OutOfBasisError: if sampled stress leaves the scalar mode table
    """
    grid = grid or S.grid
    if S.evaluator is not None:
        LOGGER.debug("Divergence of evaluable stress on %d slices", grid.t.size)
        return -d_star_two_form(S.evaluator, h)(grid.points())
    if grid is not S.grid:
        raise InputError("Sampled stress can only be differentiated on its own grid")
    return _sampled_divergence(S, tolerance)
