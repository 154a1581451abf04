"""Lie-algebra valued connection one-forms on R^4 charts and gauge transformations.

A ``ConnectionForm`` is evaluable: ``potential(points)`` returns the ambient
components ``A_nu`` with shape ``(..., 4, n, n)``. Cylinder frame components
follow by contracting with ``E_0 = y`` and ``E_j = -Phi_{-,j} y``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Callable, Optional, Union

import numpy as np
from scipy.linalg import expm

from ym_neck.config.algebras import LieAlgebra
from ym_neck.core.errors import InputError, ResolutionError
from ym_neck.forms.cylinder import ambient_frame
from ym_neck.geometry.s3 import PHI_MINUS, linear_field

LOGGER = logging.getLogger(__name__)

AMBIENT_RELATIVE_STEP = 1e-3
ORTHOGONALITY_TOLERANCE = 1e-10

Potential = Callable[[np.ndarray], np.ndarray]


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``[a, b] = ab - ba``, broadcast over leading axes."""
    return a @ b - b @ a


def ambient_derivatives(g: Callable[[np.ndarray], np.ndarray], points: np.ndarray) -> np.ndarray:
    """Fourth-order central differences ``d_mu g`` along the coordinate axes.

    The step is relative to ``|x|``; returns ``(..., 4[mu], *rest)``.
    """
    r = np.linalg.norm(points, axis=-1)
    h = AMBIENT_RELATIVE_STEP * r
    if np.any(h <= 1e-12):
        raise ResolutionError("grid too coarse: ambient difference step underflows near the origin")
    batch = points.ndim - 1
    parts = []
    for mu in range(4):
        e = np.zeros(4)
        e[mu] = 1.0
        step = h[..., None] * e
        diff = (
            -g(points + 2 * step) + 8.0 * g(points + step) - 8.0 * g(points - step) + g(points - 2 * step)
        )
        scale = (12.0 * h).reshape(h.shape + (1,) * (diff.ndim - batch))
        parts.append(diff / scale)
    return np.stack(parts, axis=batch)


@dataclass(frozen=True, eq=False)
class ConnectionForm:
    """An evaluable connection on an annulus ``inner_radius < |x| < outer_radius``."""

    potential: Potential
    algebra: LieAlgebra
    jacobian: Optional[Potential] = None
    inner_radius: float = 0.0
    outer_radius: float = np.inf
    label: str = "connection"

    def __call__(self, points: np.ndarray) -> np.ndarray:
        return self.potential(np.asarray(points, dtype=float))

    def derivatives(self, points: np.ndarray) -> np.ndarray:
        """``d_mu A_nu`` with shape ``(..., 4[mu], 4[nu], n, n)``."""
        points = np.asarray(points, dtype=float)
        if self.jacobian is not None:
            return self.jacobian(points)
        return ambient_derivatives(self.potential, points)

    @property
    def is_exact(self) -> bool:
        return self.jacobian is not None

    def curvature(self, points: np.ndarray) -> np.ndarray:
        """Ambient ``F_mn = d_m A_n - d_n A_m + [A_m, A_n]``, shape ``(..., 4, 4, n, n)``."""
        points = np.asarray(points, dtype=float)
        dA = self.derivatives(points)
        A = self.potential(points)
        batch = points.ndim - 1
        linear = dA - np.swapaxes(dA, batch, batch + 1)
        Am = np.expand_dims(A, batch + 1)
        An = np.expand_dims(A, batch)
        return linear + Am @ An - An @ Am

    def cylinder_components(self, points: np.ndarray) -> np.ndarray:
        """Frame components ``A(E_a)``, shape ``(..., 4, n, n)``."""
        E = ambient_frame(np.asarray(points, dtype=float))
        return np.einsum("...am,...mij->...aij", E, self(points))

    def cylinder_curvature(self, points: np.ndarray) -> np.ndarray:
        """Frame components ``F(E_a, E_b)``, shape ``(..., 4, 4, n, n)``."""
        E = ambient_frame(np.asarray(points, dtype=float))
        return np.einsum("...am,...mnij,...bn->...abij", E, self.curvature(points), E)

    def covers(self, r_min: float, r_max: float) -> bool:
        """True if the chart contains the annulus ``r_min <= |x| <= r_max``."""
        return self.inner_radius <= r_min and r_max <= self.outer_radius

    def __add__(self, other: "ConnectionForm") -> "ConnectionForm":
        if other.algebra.shape != self.algebra.shape:
            raise InputError("Cannot add connections valued in different algebras")
        jacobian = None
        if self.jacobian is not None and other.jacobian is not None:
            first, second = self.jacobian, other.jacobian

            def jacobian(points):
                return first(points) + second(points)

        a, b = self.potential, other.potential
        return ConnectionForm(
            potential=lambda points: a(points) + b(points),
            algebra=self.algebra,
            jacobian=jacobian,
            inner_radius=max(self.inner_radius, other.inner_radius),
            outer_radius=min(self.outer_radius, other.outer_radius),
            label=f"{self.label}+{other.label}",
        )

    def relabel(self, label: str) -> "ConnectionForm":
        return replace(self, label=label)

    @classmethod
    def zero(cls, algebra: LieAlgebra) -> "ConnectionForm":
        """The flat connection ``A = 0`` with exact zero derivatives."""
        n = algebra.matrix_size

        def potential(points):
            return np.zeros(points.shape[:-1] + (4, n, n))

        def jacobian(points):
            return np.zeros(points.shape[:-1] + (4, 4, n, n))

        return cls(potential=potential, algebra=algebra, jacobian=jacobian, label="zero")

    @classmethod
    def constant(cls, coefficients: np.ndarray, algebra: LieAlgebra, label: str = "constant"):
        """The form ``sum_nu G_nu dx_nu`` for fixed matrices ``coefficients[nu]``."""
        G = np.asarray(coefficients, dtype=float)
        if G.shape != (4,) + algebra.shape:
            raise InputError(f"Constant forms need shape (4, n, n), got {G.shape}")

        def potential(points):
            return np.broadcast_to(G, points.shape[:-1] + G.shape).copy()

        def jacobian(points):
            return np.zeros(points.shape[:-1] + (4,) + G.shape)

        return cls(potential=potential, algebra=algebra, jacobian=jacobian, label=label)

    @classmethod
    def from_cylinder(
        cls,
        f: Callable[[np.ndarray, np.ndarray], np.ndarray],
        xi: Callable[[np.ndarray, np.ndarray], np.ndarray],
        algebra: LieAlgebra,
        label: str = "cylinder",
    ) -> "ConnectionForm":
        """Build ``A = f dt + sum_j xi_j phi_{-,j}`` from cylinder callables.

        ``f(t, omega)`` returns ``(..., n, n)`` and ``xi(t, omega)`` returns
        ``(..., 3, n, n)``. In R^4 the form is
        ``A_nu = (f y_nu + sum_j xi_j (X_{-,j}(y))_nu) / |y|^2``.
        """

        def potential(points):
            r2 = np.sum(points * points, axis=-1)
            t = 0.5 * np.log(r2)
            omega = points / np.sqrt(r2)[..., None]
            fx = f(t, omega)
            xx = xi(t, omega)
            X = linear_field(PHI_MINUS, points)  # (..., 3, 4)
            out = points[..., :, None, None] * fx[..., None, :, :]
            out = out + np.einsum("...jm,...jab->...mab", X, xx)
            return out / r2[..., None, None, None]

        return cls(potential=potential, algebra=algebra, inner_radius=0.0, label=label)


def _orthogonality_defect(s: np.ndarray) -> float:
    eye = np.eye(s.shape[-1])
    return float(np.max(np.abs(np.swapaxes(s, -1, -2) @ s - eye), initial=0.0))


@dataclass(frozen=True, eq=False)
class GaugeTransformation:
    """A group-valued field ``s(x)`` with orthogonal matrix values."""

    value: Potential
    differential: Optional[Potential] = None
    label: str = "gauge"

    def __call__(self, points: np.ndarray) -> np.ndarray:
        s = self.value(np.asarray(points, dtype=float))
        defect = _orthogonality_defect(s)
        if defect > ORTHOGONALITY_TOLERANCE:
            raise InputError(f"non-orthogonal gauge transformation samples (defect {defect:.3e})")
        return s

    def derivatives(self, points: np.ndarray) -> np.ndarray:
        """``d_mu s`` with shape ``(..., 4, n, n)``."""
        points = np.asarray(points, dtype=float)
        if self.differential is not None:
            return self.differential(points)
        return ambient_derivatives(self.value, points)

    @classmethod
    def identity(cls, n: int) -> "GaugeTransformation":
        """The constant gauge ``s = 1`` in ``O(n)``."""
        def value(points):
            return np.broadcast_to(np.eye(n), points.shape[:-1] + (n, n)).copy()

        def differential(points):
            return np.zeros(points.shape[:-1] + (4, n, n))

        return cls(value=value, differential=differential, label="identity")

    @classmethod
    def exp(cls, u: Union[np.ndarray, Potential], label: str = "exp") -> "GaugeTransformation":
        """``s = exp(u)`` for a skew matrix, or a field of skew matrices."""
        if callable(u):
            field = u

            def value(points):
                return expm(field(points))

            return cls(value=value, label=label)

        matrix = np.asarray(u, dtype=float)
        group = expm(matrix)

        def constant(points):
            return np.broadcast_to(group, points.shape[:-1] + group.shape).copy()

        def differential(points):
            return np.zeros(points.shape[:-1] + (4,) + group.shape)

        return cls(value=constant, differential=differential, label=label)


def gauge_transform_connection(A: ConnectionForm, s: GaugeTransformation) -> ConnectionForm:
    """``A' = s^-1 ds + s^-1 A s`` as a new evaluable connection."""

    def potential(points):
        g = s(points)
        g_inv = np.swapaxes(g, -1, -2)[..., None, :, :]
        ds = s.derivatives(points)
        return g_inv @ ds + g_inv @ A(points) @ g[..., None, :, :]

    LOGGER.debug("Gauge transforming %s by %s", A.label, s.label)
    return ConnectionForm(
        potential=potential,
        algebra=A.algebra,
        inner_radius=A.inner_radius,
        outer_radius=A.outer_radius,
        label=f"{s.label}*{A.label}",
    )
