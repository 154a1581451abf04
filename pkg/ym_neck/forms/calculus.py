"""Exterior calculus on the cylinder by finite differences along the frame.

Forms are callables on ambient points ``y`` (R^4 minus the origin, with
``t = log|y|``) returning frame components: one-forms ``(..., 4, *values)``
and two-forms ``(..., 4, 4, *values)``. The frame brackets are
``[d/dt, X_j] = 0`` and ``[X_j, X_k] = 2 eps_jkl X_l``, and the connection
satisfies ``nabla_{X_i} X_j = eps_ijk X_k`` with ``d/dt`` parallel.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from ym_neck.geometry.flows import (
    FIRST_STEP,
    SECOND_STEP,
    frame_derivative,
    frame_second_derivative,
    laplace_beltrami,
    sphere_hodge_laplacian,
)
from ym_neck.geometry.s3 import EPSILON

CylForm = Callable[[np.ndarray], np.ndarray]

# BRACKET[a, b, c]: coefficient of E_c in [E_a, E_b].
BRACKET = np.zeros((4, 4, 4))
BRACKET[1:, 1:, 1:] = 2.0 * EPSILON

# CONNECTION[a, b, c]: coefficient of E_c in nabla_{E_a} E_b.
CONNECTION = np.zeros((4, 4, 4))
CONNECTION[1:, 1:, 1:] = EPSILON


def _component_axis(points: np.ndarray) -> int:
    return points.ndim - 1


def d_function(g: CylForm, h: float = FIRST_STEP) -> CylForm:
    """``dg`` for a function ``g(points) -> (..., *values)``."""

    def form(points: np.ndarray) -> np.ndarray:
        axis = _component_axis(points)
        return np.stack([frame_derivative(g, points, a, h) for a in range(4)], axis=axis)

    return form


def d_one_form(A: CylForm, h: float = FIRST_STEP) -> CylForm:
    """``(dA)_ab = E_a A_b - E_b A_a - A([E_a, E_b])``."""

    def form(points: np.ndarray) -> np.ndarray:
        axis = _component_axis(points)
        grad = np.stack([frame_derivative(A, points, a, h) for a in range(4)], axis=axis)
        # grad[..., a, b, *v] = E_a A_b
        values = A(points)
        bracket = np.tensordot(BRACKET, np.moveaxis(values, axis, 0), axes=(2, 0))
        bracket = np.moveaxis(bracket, [0, 1], [axis, axis + 1])
        return grad - np.swapaxes(grad, axis, axis + 1) - bracket

    return form


def d_star_one_form(A: CylForm, h: float = FIRST_STEP) -> CylForm:
    """``d*A = -sum_a E_a A_a`` (the frame is geodesic: nabla_{E_a} E_a = 0)."""

    def form(points: np.ndarray) -> np.ndarray:
        axis = _component_axis(points)
        total = 0.0
        for a in range(4):
            total = total + np.take(frame_derivative(A, points, a, h), a, axis=axis)
        return -total

    return form


def d_star_two_form(W: CylForm, h: float = FIRST_STEP) -> CylForm:
    """``(d*W)_b = -sum_a E_a W_ab + sum_a W(E_a, nabla_{E_a} E_b)``."""

    def form(points: np.ndarray) -> np.ndarray:
        axis = _component_axis(points)
        divergence = 0.0
        for a in range(4):
            divergence = divergence + np.take(frame_derivative(W, points, a, h), a, axis=axis)
        values = W(points)
        # sum_{a,c} CONNECTION[a, b, c] W_ac
        moved = np.moveaxis(np.moveaxis(values, axis, 0), axis + 1, 1)
        twist = np.einsum("abc,ac...->b...", CONNECTION, moved)
        return -divergence + np.moveaxis(twist, 0, axis)

    return form


def hodge_laplacian_one_form(A: CylForm, h: float = FIRST_STEP) -> CylForm:
    """``(d d* + d* d) A`` by nested differences."""
    dd_star = d_function(d_star_one_form(A, h), h)
    d_star_d = d_star_two_form(d_one_form(A, h), h)

    def form(points: np.ndarray) -> np.ndarray:
        return dd_star(points) + d_star_d(points)

    return form


def hodge_laplacian_split(A: CylForm, h: float = SECOND_STEP) -> CylForm:
    """The product-split Laplacian of ``A = f dt + xi``:

        (-Delta_{S^3} f - f'') dt + (Delta_{h,S^3} xi - xi'')
    """

    def f_part(points: np.ndarray) -> np.ndarray:
        return np.take(A(points), 0, axis=_component_axis(points))

    def xi_part(points: np.ndarray) -> np.ndarray:
        axis = _component_axis(points)
        return np.take(A(points), [1, 2, 3], axis=axis)

    def form(points: np.ndarray) -> np.ndarray:
        axis = _component_axis(points)
        f_lap = -laplace_beltrami(f_part, points, h) - frame_second_derivative(f_part, points, 0, h)
        xi_lap = sphere_hodge_laplacian(xi_part, points, h) - frame_second_derivative(
            xi_part, points, 0, h
        )
        return np.concatenate([np.expand_dims(f_lap, axis), xi_lap], axis=axis)

    return form
