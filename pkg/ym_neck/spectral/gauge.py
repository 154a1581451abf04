"""The gauge-fixing functional on the neck and its linearization in ``u``.

For a scalar ``u`` and a connection ``A`` put ``A' = e^-u d e^u + e^-u A e^u``.
The functional collects

    (d*A', Psi(A'(dt)) on the body end, Psi(A'(dt)) on the bubble end,
     int_C A'(dt), int_C A'(dt) omega_i, int_C d_t(A'(dt)) omega_i)

where ``C`` is the centre slice ``t = log(lam)/2`` and ``Psi`` removes the
span of ``1, omega_1..4``. Every entry is linear in ``A'``, so the
derivative in ``u`` at 0 is the same map applied to ``dv + [A, v]``.

Scalar fields are callables ``u(t, omega) -> (..., n, n)`` or constant
matrices.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np
from scipy.linalg import expm

from ym_neck.config.algebras import LieAlgebra
from ym_neck.core.errors import InputError, OutOfBasisError
from ym_neck.fields.connection import (
    ConnectionForm,
    GaugeTransformation,
    ambient_derivatives,
    commutator,
    gauge_transform_connection,
)
from ym_neck.fields.modes import SQRT3, fit_two_sided
from ym_neck.fields.sampling import GaugeField, NeckGeometry
from ym_neck.forms.calculus import d_function, d_star_one_form
from ym_neck.geometry.flows import FIRST_STEP, frame_derivative, t_derivative
from ym_neck.geometry.form_field import FormField, FormKind
from ym_neck.geometry.modes import project_onto_modes
from ym_neck.geometry.quadrature import CylinderGrid, SphereGrid
from .gaps import SpectralGaps, WeightedNormKind
from .norms import slice_holder_norm, weighted_norm

LOGGER = logging.getLogger(__name__)

BASIS_TOLERANCE = 1e-8

CylinderScalar = Callable[[np.ndarray, np.ndarray], np.ndarray]
ScalarInput = Union[None, np.ndarray, CylinderScalar]
ConnectionInput = Union[None, ConnectionForm, GaugeField]


def psi_project(f: FormField, grid: Optional[SphereGrid] = None) -> FormField:
    """``f`` minus its L^2 components along ``1, omega_1..4`` (per slice for cylinder fields)."""
    if f.kind is not FormKind.FUNCTION:
        raise InputError(f"psi_project acts on functions, got {f.kind.value}")
    if grid is not None and not grid.same_as(f.grid):
        raise InputError("Field is not sampled on the requested grid")
    projection = project_onto_modes(f.values, 0, f.grid, lead_ndim=1 if f.is_cylinder else 0)
    return f.with_values(projection.remainder)


@dataclass(frozen=True, eq=False)
class GaugeFunctionalValue:
    """One element ``(v, v_L, v_R, b_0, a_i, b_i)`` of the target space.

    ``v`` is sampled on the whole cylinder grid; ``v_left`` and ``v_right``
    are the projected traces on the body end ``t = log delta`` and the
    bubble end ``t = log lam - log delta``.
    """

    v: FormField
    v_left: FormField
    v_right: FormField
    b0: np.ndarray
    a: np.ndarray  # (4, n, n)
    b: np.ndarray  # (4, n, n)

    def as_vector(self) -> np.ndarray:
        """All entries flattened in a fixed order."""
        parts = (self.v.values, self.v_left.values, self.v_right.values, self.b0, self.a, self.b)
        return np.concatenate([np.ravel(p) for p in parts])

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.as_vector()), initial=0.0))

    def center_moments(self) -> np.ndarray:
        """``b_0, a_1..4, b_1..4`` stacked, shape ``(9, n, n)``."""
        return np.concatenate([self.b0[None], self.a, self.b], axis=0)


def _ambient(u: ScalarInput, algebra: LieAlgebra) -> Callable[[np.ndarray], np.ndarray]:
    """``u`` as a function of ambient points ``e^t omega``."""
    n = algebra.matrix_size
    if u is None:
        return lambda points: np.zeros(points.shape[:-1] + (n, n))
    if callable(u):

        def field(points):
            r = np.linalg.norm(points, axis=-1)
            return np.asarray(u(np.log(r), points / r[..., None]), dtype=float)

        return field
    matrix = np.asarray(u, dtype=float)
    if matrix.shape != algebra.shape:
        raise InputError(f"Expected a {n}x{n} matrix, got shape {matrix.shape}")
    return lambda points: np.broadcast_to(matrix, points.shape[:-1] + matrix.shape).copy()


def _slice_indices(grid: CylinderGrid, geom: NeckGeometry):
    try:
        return (
            grid.slice_index(geom.t_max),
            grid.slice_index(geom.t_min),
            grid.slice_index(geom.center),
        )
    except InputError as e:
        raise InputError(f"grid lacks the boundary or centre slices of the neck: {e}") from e


def _assemble(v, f, df_center, indices, grid: CylinderGrid, algebra: LieAlgebra) -> GaugeFunctionalValue:
    left, right, center = indices
    sphere = grid.sphere
    weights = sphere.weights
    omega = sphere.nodes
    f_center = f[center]

    def trace(k: int) -> FormField:
        return FormField(FormKind.FUNCTION, f[k], sphere, t=float(grid.t[k]), algebra=algebra)

    return GaugeFunctionalValue(
        v=FormField(FormKind.FUNCTION, v, sphere, t=grid.t, algebra=algebra),
        v_left=psi_project(trace(left)),
        v_right=psi_project(trace(right)),
        b0=sphere.integrate(f_center),
        a=np.einsum("n,ni,nab->iab", weights, omega, f_center),
        b=np.einsum("n,ni,nab->iab", weights, omega, df_center),
    )


def _evaluable(connection: ConnectionForm, grid: CylinderGrid, indices, h: float) -> GaugeFunctionalValue:
    components = connection.cylinder_components

    def f_part(points):
        return components(points)[..., 0, :, :]

    points = grid.points()
    v = d_star_one_form(components, h)(points)
    f = f_part(points)
    df_center = frame_derivative(f_part, points[indices[2]], 0, h)
    return _assemble(v, f, df_center, indices, grid, connection.algebra)


def _sampled(field: GaugeField, indices, tolerance: float) -> GaugeFunctionalValue:
    """Sample-only route: ``d*A = -d_t f + 3 sum_i c_i omega_i`` for ``xi = sum c_i psi_i + (coclosed)``."""
    grid = field.grid
    projection = project_onto_modes(field.xi, 1, grid.sphere, lead_ndim=1)
    if projection.max_fraction > tolerance:
        raise OutOfBasisError(
            f"Sampled d* needs xi in the one-form mode table; {projection.max_fraction:.3e} lies outside",
            fraction=projection.max_fraction,
        )
    df = t_derivative(field.f, grid.spacing, axis=0)
    psi_coefficients = projection.coefficients[:, :4]
    v = -df + 3.0 * np.einsum("tiab,ni->tnab", psi_coefficients, grid.sphere.nodes)
    return _assemble(v, field.f, df[indices[2]], indices, grid, field.algebra)


def _grid_for(A: ConnectionInput, grid: Optional[CylinderGrid]) -> CylinderGrid:
    if grid is not None:
        return grid
    if isinstance(A, GaugeField):
        return A.grid
    raise InputError("The gauge functional of an evaluable connection needs a cylinder grid")


def _algebra_for(A: ConnectionInput, algebra: Optional[LieAlgebra]) -> LieAlgebra:
    if A is not None:
        return A.algebra
    if algebra is None:
        raise InputError("Pass an algebra when evaluating at the zero connection")
    return algebra


def gauge_functional(
    u: ScalarInput,
    A: ConnectionInput,
    geom: NeckGeometry,
    grid: Optional[CylinderGrid] = None,
    algebra: Optional[LieAlgebra] = None,
    h: float = FIRST_STEP,
    tolerance: float = BASIS_TOLERANCE,
) -> GaugeFunctionalValue:
    """Evaluate the functional at ``(u, A)``; ``A = None`` is the zero connection.

    Evaluable connections (and samples that keep their source) are
    differenced along the frame flows. Sample-only fields take ``d_t`` by
    differences along the slices and the sphere divergence from the mode
    table.

    Raises:
        InputError: if the grid lacks the boundary or centre slices
        OutOfBasisError: if sample-only ``xi`` leaves the mode table
    """
    grid = _grid_for(A, grid)
    algebra = _algebra_for(A, algebra)
    indices = _slice_indices(grid, geom)
    source = A if isinstance(A, ConnectionForm) else getattr(A, "source", None)
    u_ambient = _ambient(u, algebra)

    if isinstance(A, GaugeField) and source is None:
        if u is None:
            return _sampled(A, indices, tolerance)
        points = grid.points()
        s = expm(u_ambient(points))
        ds = d_function(lambda p: expm(u_ambient(p)), h)(points)
        s_inv = np.swapaxes(s, -1, -2)[:, :, None]
        transformed = s_inv @ ds + s_inv @ A.components @ s[:, :, None]
        return _sampled(A.with_components(transformed), indices, tolerance)

    connection = source if source is not None else ConnectionForm.zero(algebra)
    if u is not None:
        connection = gauge_transform_connection(connection, GaugeTransformation.exp(u_ambient, label="e^u"))
    LOGGER.debug("Gauge functional of %s on %d slices", connection.label, grid.t.size)
    return _evaluable(connection, grid, indices, h)


def gauge_linearization(
    v: ScalarInput,
    A: ConnectionInput,
    geom: NeckGeometry,
    grid: Optional[CylinderGrid] = None,
    algebra: Optional[LieAlgebra] = None,
    h: float = FIRST_STEP,
    tolerance: float = BASIS_TOLERANCE,
) -> GaugeFunctionalValue:
    """The derivative of the functional in ``u`` at ``(0, A)`` applied to ``v``.

    This is the functional's linear map applied to ``dv + A v - v A``; at
    ``A = 0`` it reduces to ``(-Delta v, Psi(d_t v), Psi(d_t v), int d_t v,
    int d_t v omega_i, int d_t^2 v omega_i)``.
    """
    grid = _grid_for(A, grid)
    algebra = _algebra_for(A, algebra)
    indices = _slice_indices(grid, geom)
    v_ambient = _ambient(v, algebra)
    source = A if isinstance(A, ConnectionForm) else getattr(A, "source", None)

    if isinstance(A, GaugeField) and source is None:
        points = grid.points()
        dv = d_function(v_ambient, h)(points)
        values = v_ambient(points)[:, :, None]
        direction = A.with_components(dv + commutator(A.components, values))
        return _sampled(direction, indices, tolerance)

    base = source

    def potential(points):
        out = ambient_derivatives(v_ambient, points)
        if base is not None:
            out = out + commutator(base(points), v_ambient(points)[..., None, :, :])
        return out

    direction = ConnectionForm(potential=potential, algebra=algebra, label="dv+[A,v]")
    return _evaluable(direction, grid, indices, h)


@dataclass(frozen=True)
class LowModeFit:
    """Low modes of a scalar on the neck.

    ``h ~ a0 + b0 (t - log(lam)/2) + sum_i (a_i e^{sqrt3 t} + b_i e^{-sqrt3 (t - log lam)}) omega_i``;
    ``weight`` is ``lam^(alpha2 / 2)``, the scale of the centre moments in
    the target norm.
    """

    a0: np.ndarray
    b0: np.ndarray
    a: np.ndarray
    b: np.ndarray
    weight: float


def fit_low_modes(h: FormField, geom: NeckGeometry, gaps: Optional[SpectralGaps] = None) -> LowModeFit:
    """Fit the constant and ``omega_i`` amplitudes of ``h`` slice by slice.

    Raises:
        InputError: unless ``h`` is a function sampled on t-slices
        DegenerateFitError: for a degenerate t-range
    """
    gaps = gaps or SpectralGaps()
    if h.kind is not FormKind.FUNCTION or not h.is_cylinder:
        raise InputError("fit_low_modes needs a function sampled on t-slices")
    projection = project_onto_modes(h.values, 0, h.grid, lead_ndim=1)
    amplitudes = projection.coefficients  # (nt, 5, ...)
    constant = fit_two_sided(h.t - geom.center, amplitudes[:, 0], 0.0, geom.log_lam)
    omega = fit_two_sided(h.t, amplitudes[:, 1:], SQRT3, geom.log_lam)
    return LowModeFit(
        a0=constant[0],
        b0=constant[1],
        a=omega[0],
        b=omega[1],
        weight=float(geom.lam ** (gaps.alpha2 / 2.0)),
    )


def y_norm(
    value: GaugeFunctionalValue,
    geom: NeckGeometry,
    gaps: Optional[SpectralGaps] = None,
) -> float:
    """``||v||_X3 + |v_L|_{C^alpha2} + |v_R|_{C^alpha2} + (|b_0| + sum |a_i| + |b_i|) / lam^(alpha2/2)``."""
    gaps = gaps or SpectralGaps()
    algebra = value.v.algebra
    scale = algebra.trace_scale if algebra is not None else 1.0
    nodes = value.v.grid.nodes
    moments = value.center_moments()
    moment_norms = np.sqrt(np.sum(moments.reshape(moments.shape[0], -1) ** 2, axis=1) / scale)
    return (
        weighted_norm(value.v, WeightedNormKind.X3, geom, gaps)
        + slice_holder_norm(value.v_left.values, nodes, gaps.alpha2, scale)
        + slice_holder_norm(value.v_right.values, nodes, gaps.alpha2, scale)
        + float(np.sum(moment_norms)) / geom.lam ** (gaps.alpha2 / 2.0)
    )
