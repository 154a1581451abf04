"""Checks on d*, the product split of the Hodge Laplacian and the instanton display."""

import math
from typing import Callable, Dict

import numpy as np

from ym_neck.fields.curvature import curvature_boundary_matrices
from ym_neck.fields.instanton import bpst_connection, instanton_curvature_at_center
from ym_neck.forms.calculus import d_star_one_form, hodge_laplacian_one_form, hodge_laplacian_split
from ym_neck.geometry.s3 import PHI_MINUS, linear_field, plus_in_minus_coframe
from ..base_check import CheckContext, IdentityCheck

SQRT3 = math.sqrt(3.0)
SLICE_TIMES = (-0.5, 0.0, 0.5)


def _cylinder_points(context: CheckContext, count: int) -> np.ndarray:
    """Ambient points ``e^t omega`` for a few slices and sampled nodes, shape ``(T, N, 4)``."""
    nodes = context.sample_nodes(count)
    return np.stack([math.exp(t) * nodes for t in SLICE_TIMES])


def _polar(y: np.ndarray):
    r = np.linalg.norm(y, axis=-1)
    return r, y / r[..., None]


def _one_form(dt_part: Callable, tangential: Callable) -> Callable:
    """Frame components ``(f, xi_1, xi_2, xi_3)`` from the two parts as functions of ``(r, x)``."""

    def form(y: np.ndarray) -> np.ndarray:
        r, x = _polar(y)
        out = np.zeros(y.shape[:-1] + (4,))
        out[..., 0] = dt_part(r, x)
        out[..., 1:] = tangential(r, x)
        return out

    return form


def _none(r, x):
    return 0.0


def _relative(actual: np.ndarray, expected: np.ndarray) -> float:
    scale = max(float(np.max(np.abs(expected))), 1.0e-300)
    return float(np.max(np.abs(actual - expected))) / scale


class CoclosedCheck(IdentityCheck):
    """``d*`` of the growing and decaying neck modes."""

    default_tolerance = 1e-6

    def residuals(self, context: CheckContext) -> Dict[str, float]:
        y = _cylinder_points(context, int(self.get_config_value("sample_nodes", 48)))
        r, x = _polar(y)
        lam = float(self.get_config_value("lam", context.lam))
        result = {}

        worst = 0.0
        for i in range(3):
            minus = _one_form(_none, lambda r, x, i=i: r[..., None] ** 2 * np.eye(3)[i])
            plus = _one_form(_none, lambda r, x, i=i: r[..., None] ** 2 * plus_in_minus_coframe(x)[..., i, :])
            for A in (minus, plus):
                worst = max(worst, float(np.max(np.abs(d_star_one_form(A)(y)))) / float(np.max(r**2)))
        result["phi_growing"] = worst

        growing = 0.0
        decaying = 0.0
        for i in range(4):
            def psi_part(r, x, i=i):
                return linear_field(PHI_MINUS, x)[..., :, i]

            up = _one_form(_none, lambda r, x, i=i: r[..., None] ** SQRT3 * psi_part(r, x))
            down = _one_form(
                _none, lambda r, x, i=i: (lam / r[..., None]) ** SQRT3 * psi_part(r, x)
            )
            growing = max(growing, _relative(d_star_one_form(up)(y), 3.0 * r**SQRT3 * x[..., i]))
            decaying = max(
                decaying, _relative(d_star_one_form(down)(y), 3.0 * (lam / r) ** SQRT3 * x[..., i])
            )
        result["psi_growing"] = growing
        result["psi_decaying"] = decaying
        return result


class HodgeSplitCheck(IdentityCheck):
    """Neck modes are harmonic, and the split Laplacian agrees with ``d d* + d* d``."""

    default_tolerance = 1e-6

    def residuals(self, context: CheckContext) -> Dict[str, float]:
        y = _cylinder_points(context, int(self.get_config_value("sample_nodes", 16)))
        r, x = _polar(y)
        scale = float(np.max(r**2))

        harmonic = {
            "dt": _one_form(lambda r, x: np.ones_like(r), lambda r, x: np.zeros(r.shape + (3,))),
            "omega_dt": _one_form(lambda r, x: r**SQRT3 * x[..., 0], lambda r, x: np.zeros(r.shape + (3,))),
            "psi": _one_form(_none, lambda r, x: r[..., None] ** SQRT3 * linear_field(PHI_MINUS, x)[..., :, 1]),
            "phi_minus": _one_form(_none, lambda r, x: r[..., None] ** 2 * np.eye(3)[0]),
            "phi_plus": _one_form(_none, lambda r, x: r[..., None] ** -2 * plus_in_minus_coframe(x)[..., 1, :]),
        }
        result = {
            f"harmonic_{name}": float(np.max(np.abs(hodge_laplacian_split(A)(y)))) / scale
            for name, A in harmonic.items()
        }

        def generic_dt(r, x):
            return np.sin(np.log(r)) * x[..., 1]

        def generic_xi(r, x):
            t = np.log(r)[..., None]
            return t * linear_field(PHI_MINUS, x)[..., :, 0] + np.cos(t) * plus_in_minus_coframe(x)[..., 2, :]

        A = _one_form(generic_dt, generic_xi)
        result["split_formula"] = _relative(hodge_laplacian_one_form(A)(y), hodge_laplacian_split(A)(y))
        return result


class InstantonCheck(IdentityCheck):
    """The unit instanton's curvature at the centre against its closed form."""

    default_tolerance = 1e-10

    def residuals(self, context: CheckContext) -> Dict[str, float]:
        result = {}
        for orientation in ("asd", "sd"):
            connection = bpst_connection(orientation=orientation)
            algebra = connection.algebra
            F = connection.curvature(np.zeros(4))
            closed = instanton_curvature_at_center(orientation, algebra)
            result[f"{orientation}_closed_form"] = float(np.max(np.abs(F - closed)))
            energy = float(np.einsum("mnij,mnij->", F, F)) / algebra.trace_scale
            result[f"{orientation}_energy_density"] = abs(energy - 48.0)

            boundary = curvature_boundary_matrices(F)
            wrong, right = (boundary.plus, boundary.minus) if orientation == "asd" else (
                boundary.minus,
                boundary.plus,
            )
            result[f"{orientation}_opposite_part"] = float(np.max(np.abs(wrong)))
            norms = np.array([float(algebra.norm(m)) for m in right])
            result[f"{orientation}_unit_coefficients"] = float(np.max(np.abs(norms - 1.0)))
        return result
