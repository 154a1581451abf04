"""Finite differences along the flows of the cylinder frame.

Sphere derivatives are taken along the rotations ``exp(s X_{-,i})`` (great
circles through the point), so no chart is needed and the stencils never
leave the sphere. The t-derivative moves along the radial flow
``y -> e^s y``. All stencils are fourth-order central.

A field here is any callable ``g(points) -> array`` with points shaped
``(..., 4)`` and output shaped ``(..., *rest)``.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from ym_neck.core.errors import ResolutionError
from .s3 import EPSILON, PHI_MINUS

FIRST_STEP = 5e-3
SECOND_STEP = 1e-2
MIN_STEP = 1e-8

Field = Callable[[np.ndarray], np.ndarray]


def _check_step(h: float) -> None:
    if not h > MIN_STEP:
        raise ResolutionError(f"grid too coarse: finite-difference step {h} underflows")


def rotate(points: np.ndarray, i: int, s: float) -> np.ndarray:
    """Flow of ``X_{-,i}`` (0-based ``i``) for time ``s``.

    Since ``Phi^2 = -1`` the flow is ``cos(s) y - sin(s) Phi y``, valid at any
    radius.
    """
    return np.cos(s) * points - np.sin(s) * (points @ PHI_MINUS[i].T)


def dilate(points: np.ndarray, s: float) -> np.ndarray:
    """Flow of ``d/dt`` on the cylinder: ``y -> e^s y``."""
    return np.exp(s) * points


def _flow(points: np.ndarray, a: int, s: float) -> np.ndarray:
    return dilate(points, s) if a == 0 else rotate(points, a - 1, s)


def frame_derivative(g: Field, points: np.ndarray, a: int, h: float = FIRST_STEP) -> np.ndarray:
    """``E_a g`` where ``E_0 = d/dt`` and ``E_j = X_{-,j}`` (j = 1..3)."""
    _check_step(h)
    return (
        -g(_flow(points, a, 2 * h))
        + 8.0 * g(_flow(points, a, h))
        - 8.0 * g(_flow(points, a, -h))
        + g(_flow(points, a, -2 * h))
    ) / (12.0 * h)


def frame_second_derivative(
    g: Field, points: np.ndarray, a: int, h: float = SECOND_STEP
) -> np.ndarray:
    """``E_a E_a g`` along the integral curve of ``E_a``."""
    _check_step(h)
    return (
        -g(_flow(points, a, 2 * h))
        + 16.0 * g(_flow(points, a, h))
        - 30.0 * g(points)
        + 16.0 * g(_flow(points, a, -h))
        - g(_flow(points, a, -2 * h))
    ) / (12.0 * h * h)


def sphere_gradient(g: Field, points: np.ndarray, h: float = FIRST_STEP) -> np.ndarray:
    """``(X_1 g, X_2 g, X_3 g)`` stacked on a new axis after the point axes."""
    batch = points.ndim - 1
    return np.stack([frame_derivative(g, points, a, h) for a in (1, 2, 3)], axis=batch)


def laplace_beltrami(g: Field, points: np.ndarray, h: float = SECOND_STEP) -> np.ndarray:
    """The (nonpositive) Laplace-Beltrami operator ``sum_i X_i X_i g`` on S^3."""
    return sum(frame_second_derivative(g, points, a, h) for a in (1, 2, 3))


def sphere_hodge_laplacian(xi: Field, points: np.ndarray, h: float = SECOND_STEP) -> np.ndarray:
    """Hodge Laplacian of a one-form on S^3 in ``phi_-`` frame components.

    ``xi(points)`` returns components ``(..., 3, *values)``. In this frame

        (Delta_h xi)_k = -sum_i X_i X_i xi_k + 2 sum_{i,l} eps_{ikl} X_i xi_l + 4 xi_k
    """
    batch = points.ndim - 1
    rough = -laplace_beltrami(xi, points, h)
    first = np.stack([frame_derivative(xi, points, a, h / 2) for a in (1, 2, 3)], axis=batch)
    # first[..., i, l, *values] = X_i xi_l
    twist = np.einsum("ikl,...il->...k", EPSILON, _values_last(first, batch))
    return rough + 2.0 * _values_restore(twist, first, batch) + 4.0 * xi(points)


def _values_last(first: np.ndarray, batch: int) -> np.ndarray:
    """Flatten trailing value axes so einsum indices stay fixed."""
    lead = first.shape[: batch + 2]
    flat = first.reshape(lead + (-1,))
    return np.moveaxis(flat, -1, batch)  # (..., V, i, l)


def _values_restore(twist: np.ndarray, first: np.ndarray, batch: int) -> np.ndarray:
    """Inverse of ``_values_last`` for the reduced ``(..., V, k)`` array."""
    moved = np.moveaxis(twist, batch, -1)  # (..., k, V)
    return moved.reshape(first.shape[:batch] + (3,) + first.shape[batch + 2 :])


def t_derivative(values: np.ndarray, spacing: float, axis: int = 0) -> np.ndarray:
    """Fourth-order first derivative of samples on a uniform t-grid.

    Central five-point stencil inside, one-sided five-point stencils on the
    two outermost nodes at each end.
    """
    v = np.moveaxis(np.asarray(values, dtype=float), axis, 0)
    n = v.shape[0]
    if n < 5:
        raise ResolutionError(f"grid too coarse: {n} slices, need at least 5 for t-derivatives")
    out = np.empty_like(v)
    out[2:-2] = (-v[4:] + 8.0 * v[3:-1] - 8.0 * v[1:-3] + v[:-4]) / 12.0
    out[0] = (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) / 12.0
    out[1] = (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]) / 12.0
    out[-1] = (25.0 * v[-1] - 48.0 * v[-2] + 36.0 * v[-3] - 16.0 * v[-4] + 3.0 * v[-5]) / 12.0
    out[-2] = (3.0 * v[-1] + 10.0 * v[-2] - 18.0 * v[-3] + 6.0 * v[-4] - v[-5]) / 12.0
    return np.moveaxis(out / spacing, 0, axis)


def t_second_derivative(values: np.ndarray, spacing: float, axis: int = 0) -> np.ndarray:
    """Fourth-order second derivative of samples on a uniform t-grid."""
    v = np.moveaxis(np.asarray(values, dtype=float), axis, 0)
    n = v.shape[0]
    if n < 6:
        raise ResolutionError(f"grid too coarse: {n} slices, need at least 6 for t-derivatives")
    out = np.empty_like(v)
    out[2:-2] = (-v[4:] + 16.0 * v[3:-1] - 30.0 * v[2:-2] + 16.0 * v[1:-3] - v[:-4]) / 12.0
    out[0] = (45.0 * v[0] - 154.0 * v[1] + 214.0 * v[2] - 156.0 * v[3] + 61.0 * v[4] - 10.0 * v[5]) / 12.0
    out[1] = (10.0 * v[0] - 15.0 * v[1] - 4.0 * v[2] + 14.0 * v[3] - 6.0 * v[4] + v[5]) / 12.0
    out[-1] = (45.0 * v[-1] - 154.0 * v[-2] + 214.0 * v[-3] - 156.0 * v[-4] + 61.0 * v[-5] - 10.0 * v[-6]) / 12.0
    out[-2] = (10.0 * v[-1] - 15.0 * v[-2] - 4.0 * v[-3] + 14.0 * v[-4] - 6.0 * v[-5] + v[-6]) / 12.0
    return np.moveaxis(out / spacing**2, 0, axis)
