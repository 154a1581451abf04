"""The product split of the Hodge Laplacian on the cylinder.

For ``A = f dt + xi`` on ``R x S^3``

    Delta_h A = (-Delta_{S^3} f - f'') dt + (Delta_{h,S^3} xi - xi'')

Sampled fields are differentiated mode by mode on the sphere (exact on the
table) and by fourth-order differences in t.
"""

from __future__ import annotations

import logging
from typing import Optional, Tuple, Union

import numpy as np

from ym_neck.core.errors import InputError, NotHarmonicError, OutOfBasisError
from ym_neck.fields.connection import ConnectionForm
from ym_neck.fields.modes import NeckExpansion, extract_neck_modes
from ym_neck.fields.sampling import GaugeField, NeckGeometry
from ym_neck.forms.calculus import hodge_laplacian_split
from ym_neck.geometry.flows import t_second_derivative
from ym_neck.geometry.form_field import FormField, FormKind
from ym_neck.geometry.modes import mode_table, project_onto_modes, reconstruct
from ym_neck.geometry.quadrature import CylinderGrid

LOGGER = logging.getLogger(__name__)

BASIS_TOLERANCE = 1e-8
HARMONIC_TOLERANCE = 1e-4

OneFormInput = Union[GaugeField, FormField, ConnectionForm]


def _as_gauge_field(A: Union[GaugeField, FormField], geom: Optional[NeckGeometry] = None) -> GaugeField:
    if isinstance(A, GaugeField):
        return A
    if A.kind is not FormKind.CYLINDER_ONE_FORM or not A.is_cylinder or A.algebra is None:
        raise InputError("Expected a Lie-valued cylinder one-form sampled on t-slices")
    return GaugeField.from_components(
        A.values,
        CylinderGrid(t=A.t, sphere=A.grid),
        A.algebra,
        lam=geom.lam if geom else None,
        delta=geom.delta if geom else None,
    )


def hodge_split(A: Union[GaugeField, FormField]) -> Tuple[FormField, FormField]:
    """The ``f dt`` part (as a function) and the tangential part ``xi``."""
    field = _as_gauge_field(A)
    grid = field.grid
    f = FormField(FormKind.FUNCTION, field.f, grid.sphere, t=grid.t, algebra=field.algebra)
    xi = FormField(FormKind.SPHERE_ONE_FORM, field.xi, grid.sphere, t=grid.t, algebra=field.algebra)
    return f, xi


def _mode_eigenvalues(degree: int) -> np.ndarray:
    return np.array([mode.eigenvalue for mode in mode_table(degree)])


def _sphere_part(samples: np.ndarray, degree: int, grid: CylinderGrid, tolerance: float) -> np.ndarray:
    """``L`` applied mode by mode: ``-Delta`` on functions, ``Delta_h`` on one-forms."""
    projection = project_onto_modes(samples, degree, grid.sphere, lead_ndim=1)
    if projection.max_fraction > tolerance:
        raise OutOfBasisError(
            f"Samples have {projection.max_fraction:.3e} of their energy outside the "
            f"degree-{degree} mode table",
            fraction=projection.max_fraction,
        )
    coefficients = projection.coefficients
    shape = (1, -1) + (1,) * (coefficients.ndim - 2)
    scaled = coefficients * _mode_eigenvalues(degree).reshape(shape)
    return reconstruct(scaled, degree, grid.sphere, lead_ndim=1)


def hodge_laplacian(
    A: OneFormInput,
    grid: Optional[CylinderGrid] = None,
    tolerance: float = BASIS_TOLERANCE,
) -> FormField:
    """``Delta_h A`` evaluated through the product split.

    Evaluable inputs (a connection, or samples that keep their source) are
    differenced along the frame flows; sample-only fields use the mode table
    on the sphere and differences in t.

    Raises:
        OutOfBasisError: if sample-only input leaves the mode table
        ResolutionError: with too few slices for the t-stencil
    """
    source = A if isinstance(A, ConnectionForm) else getattr(A, "source", None)
    if source is not None:
        if grid is None:
            if isinstance(A, ConnectionForm):
                raise InputError("The Laplacian of an evaluable connection needs a cylinder grid")
            grid = A.grid
        values = hodge_laplacian_split(source.cylinder_components)(grid.points())
        return FormField(FormKind.CYLINDER_ONE_FORM, values, grid.sphere, t=grid.t, algebra=source.algebra)

    field = _as_gauge_field(A)
    grid = field.grid
    spacing = grid.spacing
    f_lap = _sphere_part(field.f, 0, grid, tolerance) - t_second_derivative(field.f, spacing, axis=0)
    xi_lap = _sphere_part(field.xi, 1, grid, tolerance) - t_second_derivative(field.xi, spacing, axis=0)
    values = np.concatenate([f_lap[:, :, None], xi_lap], axis=2)
    return FormField(FormKind.CYLINDER_ONE_FORM, values, grid.sphere, t=grid.t, algebra=field.algebra)


def _slice_norms(values: np.ndarray, weights: np.ndarray, scale: float) -> np.ndarray:
    flat = values.reshape(values.shape[0], values.shape[1], -1)
    return np.sqrt(np.einsum("n,tnv,tnv->t", weights, flat, flat) / scale)


def harmonic_residual(H: GaugeField, tolerance: float = BASIS_TOLERANCE) -> float:
    """``max_t |Delta_h H| / max_t |H|`` in slice L^2 norms (0 for ``H = 0``)."""
    lap = hodge_laplacian(H, tolerance=tolerance)
    weights = H.grid.sphere.weights
    scale = H.algebra.trace_scale
    top = float(np.max(_slice_norms(H.components, weights, scale)))
    if top == 0:
        return 0.0
    return float(np.max(_slice_norms(lap.values, weights, scale))) / top


def harmonic_expansion(
    H: Union[GaugeField, FormField],
    geom: Optional[NeckGeometry] = None,
    tolerance: float = HARMONIC_TOLERANCE,
) -> NeckExpansion:
    """Separate variables in a harmonic one-form on the neck.

    Raises:
        NotHarmonicError: if ``|Delta_h H|`` exceeds ``tolerance`` relative to ``|H|``
    """
    field = _as_gauge_field(H, geom)
    geom = geom or field.geometry
    residual = harmonic_residual(field)
    if residual > tolerance:
        raise NotHarmonicError(
            f"input is not harmonic: relative Laplacian {residual:.3e} > {tolerance:.1e}",
            residual=residual,
        )
    LOGGER.debug("Harmonic expansion: relative Laplacian %.3e", residual)
    return extract_neck_modes(field, geom)
