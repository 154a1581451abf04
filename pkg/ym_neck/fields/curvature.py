"""Curvature of sampled or evaluable connections, and boundary matrices."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from ym_neck.config.algebras import LieAlgebra
from ym_neck.core.errors import InputError, OutOfBasisError
from ym_neck.forms.cylinder import d_phi
from ym_neck.forms.r4 import Chart
from ym_neck.geometry.flows import t_derivative
from ym_neck.geometry.modes import project_onto_modes
from ym_neck.geometry.quadrature import CylinderGrid
from ym_neck.geometry.s3 import PHI_MINUS, PHI_PLUS, linear_field
from .connection import ConnectionForm
from .sampling import GaugeField

LOGGER = logging.getLogger(__name__)

SAMPLED_BASIS_TOLERANCE = 1e-8


@dataclass(frozen=True, eq=False)
class CurvatureField:
    """Frame components ``W_ab = F(E_a, E_b)`` with shape ``(nt, N, 4, 4, n, n)``."""

    W: np.ndarray
    grid: CylinderGrid
    algebra: LieAlgebra
    source: Optional[ConnectionForm] = None

    def __post_init__(self):
        W = np.asarray(self.W, dtype=float)
        expected = self.grid.shape + (4, 4) + self.algebra.shape
        if W.shape != expected:
            raise InputError(f"Curvature samples {W.shape} do not match {expected}")
        object.__setattr__(self, "W", W)

    def pointwise_norm_squared(self) -> np.ndarray:
        """``|F|^2 = sum_ab <W_ab, W_ab>``, shape ``(nt, N)``."""
        return np.einsum("tnabij,tnabij->tn", self.W, self.W) / self.algebra.trace_scale

    def pointwise_norm(self) -> np.ndarray:
        """Pointwise ``|F|``, shape ``(nt, N)``."""
        return np.sqrt(np.maximum(self.pointwise_norm_squared(), 0.0))

    def sup_norm(self) -> np.ndarray:
        """Per-slice maximum of ``|F|`` over the sphere nodes."""
        return np.max(self.pointwise_norm(), axis=1)

    def antisymmetry_defect(self) -> float:
        """Largest absolute entry of ``W_ab + W_ba`` over all samples.

        Returns:
            0.0 for an exactly antisymmetric field, and for an empty grid
        """
        return float(np.max(np.abs(self.W + np.swapaxes(self.W, 2, 3)), initial=0.0))

    def conjugated(self, s: np.ndarray) -> "CurvatureField":
        """Conjugate the curvature by a sampled gauge transformation.

        Args:
            s: Orthogonal gauge samples, shape ``(nt, N, n, n)``; ``s^-1`` is
                taken as the transpose

        Returns:
            New field with ``W_ab -> s^-1 W_ab s``; the ``source`` is dropped
        """
        s_inv = np.swapaxes(s, -1, -2)[:, :, None, None]
        return CurvatureField(s_inv @ self.W @ s[:, :, None, None], self.grid, self.algebra)


def _commutator_term(components: np.ndarray) -> np.ndarray:
    Aa = components[:, :, :, None]
    Ab = components[:, :, None, :]
    return Aa @ Ab - Ab @ Aa


def _sampled_curvature(A: GaugeField, tolerance: float) -> np.ndarray:
    """``dA + [A, A]`` from samples: mode-exact on the sphere, differences in t."""
    grid = A.grid
    sphere = grid.sphere
    spacing = grid.spacing
    w = sphere.weights
    # A vanishing dt part is judged against the whole connection, not its own roundoff
    reference = float(
        np.max(np.einsum("n,tn...->t", w, A.f**2) + np.einsum("n,tn...->t", w, A.xi**2), initial=0.0)
    )
    proj_f = project_onto_modes(A.f, 0, sphere, lead_ndim=1, reference_energy=reference)
    proj_xi = project_onto_modes(A.xi, 1, sphere, lead_ndim=1, reference_energy=reference)
    worst = max(proj_f.max_fraction, proj_xi.max_fraction)
    if worst > tolerance:
        raise OutOfBasisError(
            f"Sampled connection has {worst:.3e} of its energy outside the mode table; "
            "supply an evaluable source to take its curvature",
            fraction=worst,
        )
    nodes = sphere.nodes
    frame = linear_field(PHI_MINUS, nodes)  # (N, 3, 4): (X_j)_i
    # X_j omega_i = (X_j)_i, and X_j of the constant vanishes
    Xf = np.einsum("tiab,nji->tnjab", proj_f.coefficients[:, 1:], frame)
    dmodes = np.zeros((10, nodes.shape[0], 3, 3))
    for i in (1, 2, 3):
        dmodes[3 + i] = d_phi("+", i, nodes)
        dmodes[6 + i] = d_phi("-", i, nodes)
    dxi = np.einsum("tmab,mnjk->tnjkab", proj_xi.coefficients, dmodes)
    dt_xi = t_derivative(A.xi, spacing, axis=0)

    nt, n_nodes = grid.shape
    W = np.zeros((nt, n_nodes, 4, 4) + A.algebra.shape)
    W[:, :, 0, 1:] = dt_xi - Xf
    W[:, :, 1:, 0] = -(dt_xi - Xf)
    W[:, :, 1:, 1:] = dxi
    return W + _commutator_term(A.components)


def curvature(
    A: Union[GaugeField, ConnectionForm],
    grid: Optional[CylinderGrid] = None,
    tolerance: float = SAMPLED_BASIS_TOLERANCE,
) -> CurvatureField:
    """``F = dA + A ^ A`` in cylinder frame components.

    Evaluable connections use their exact derivatives (or ambient
    differences when none are supplied). Sample-only fields are
    differentiated mode by mode on the sphere and by fourth-order
    differences in t.

    Raises:
        ResolutionError: if the t-grid is too coarse for the stencils
        OutOfBasisError: if sample-only input leaves the mode table
    """
    if isinstance(A, ConnectionForm):
        if grid is None:
            raise InputError("Curvature of an evaluable connection needs a cylinder grid")
        W = A.cylinder_curvature(grid.points())
        return CurvatureField(W, grid, A.algebra, source=A)
    if A.source is not None:
        W = A.source.cylinder_curvature(A.grid.points())
        return CurvatureField(W, A.grid, A.algebra, source=A.source)
    LOGGER.debug("Taking curvature of sample-only field on %d slices", A.grid.t.size)
    return CurvatureField(_sampled_curvature(A, tolerance), A.grid, A.algebra)


@dataclass(frozen=True)
class BoundaryMatrices:
    """Coefficients of ``F(0) = sum_i 2 F_{+,i} Phi_{+,i} + 2 F_{-,i} Phi_{-,i}``.

    ``plus`` and ``minus`` refer to the manifold orientation: in the bubble
    (y) chart the coefficient of ``Phi_{-,i}(y)`` is the self-dual triple.
    At the x origin the unit ASD instanton gives ``minus = q_i`` and the unit
    SD instanton gives ``plus = -q_i`` (see ``ym_neck.fields.instanton``).
    """

    plus: np.ndarray
    minus: np.ndarray
    chart: Chart


def _decompose(F: np.ndarray):
    F = np.asarray(F, dtype=float)
    if F.shape[:2] != (4, 4):
        raise InputError(f"Expected curvature components (4, 4, ...), got {F.shape}")
    plus = np.einsum("imn,mn...->i...", PHI_PLUS, F) / 8.0
    minus = np.einsum("imn,mn...->i...", PHI_MINUS, F) / 8.0
    return plus, minus


def curvature_boundary_matrices(
    F: Union[np.ndarray, ConnectionForm], chart="x"
) -> BoundaryMatrices:
    """Decompose a chart-origin curvature into its SD and ASD triples.

    ``F`` is either the ambient components at the origin, shape
    ``(4, 4, n, n)``, or an evaluable connection regular at the origin.
    """
    chart = Chart.parse(chart)
    if isinstance(F, ConnectionForm):
        F = F.curvature(np.zeros(4))
    coeff_plus, coeff_minus = _decompose(F)
    if chart is Chart.X:
        return BoundaryMatrices(plus=coeff_plus, minus=coeff_minus, chart=chart)
    return BoundaryMatrices(plus=coeff_minus, minus=coeff_plus, chart=chart)
