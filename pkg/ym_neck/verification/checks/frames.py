"""Checks on the sphere frames, the transition matrix and the eigenmodes."""

from typing import Dict

import numpy as np

from ym_neck.geometry.flows import laplace_beltrami, sphere_hodge_laplacian
from ym_neck.geometry.s3 import (
    PHI_MINUS,
    SPHERE_VOLUME,
    frame,
    linear_field,
    plus_in_minus_coframe,
    transition_values,
)
from ..base_check import CheckContext, IdentityCheck


class FramesCheck(IdentityCheck):
    """Both rotation frames are orthonormal, tangent, and related through T."""

    def residuals(self, context: CheckContext) -> Dict[str, float]:
        x = context.grid.nodes
        result = {}
        for sign in ("+", "-"):
            F = frame(sign, x)
            gram = np.einsum("nia,nja->nij", F, F) - np.eye(3)
            result[f"gram_{sign}"] = float(np.max(np.abs(gram)))
            result[f"tangent_{sign}"] = float(np.max(np.abs(np.einsum("nia,na->ni", F, x))))
        # phi_{-,k} = -sum_i T_ik phi_{+,i}
        T = transition_values(x)
        coframe = frame("-", x) + np.einsum("nik,nia->nka", T, frame("+", x))
        result["coframe_relation"] = float(np.max(np.abs(coframe)))
        return result


class TransitionCheck(IdentityCheck):
    """T is orthogonal with det -1, equals -I at e_1 and carries X_- to X_+."""

    def residuals(self, context: CheckContext) -> Dict[str, float]:
        x = context.grid.nodes
        T = transition_values(x)
        TtT = np.einsum("nki,nkj->nij", T, T) - np.eye(3)
        pole = transition_values(np.array([1.0, 0.0, 0.0, 0.0])) + np.eye(3)
        # X_{+,i} = -T_ij X_{-,j}
        fields = frame("+", x) + np.einsum("nij,nja->nia", T, frame("-", x))
        return {
            "orthogonality": float(np.max(np.abs(TtT))),
            "determinant": float(np.max(np.abs(np.linalg.det(T) + 1.0))),
            "pole": float(np.max(np.abs(pole))),
            "frame_transition": float(np.max(np.abs(fields))),
        }


class TIntegralsCheck(IdentityCheck):
    """Sphere averages of T and of products of its entries."""

    needs_exact_quadrature = True
    default_tolerance = 1e-8

    def residuals(self, context: CheckContext) -> Dict[str, float]:
        grid = context.grid
        T = transition_values(grid.nodes).reshape(grid.size, 9)
        first = grid.integrate(T)
        second = grid.integrate(np.einsum("na,nb->nab", T, T))
        off = second[~np.eye(9, dtype=bool)]
        return {
            "mean": float(np.max(np.abs(first))),
            "cross_products": float(np.max(np.abs(off))),
            "squares": float(np.max(np.abs(np.diag(second) - SPHERE_VOLUME / 3.0))),
        }


class EigenmodesCheck(IdentityCheck):
    """Laplace and Hodge eigenvalues of the tabulated modes, plus quadrature moments."""

    default_tolerance = 1e-6

    def residuals(self, context: CheckContext) -> Dict[str, float]:
        grid = context.grid
        x = context.sample_nodes(int(self.get_config_value("sample_nodes", 256)))
        result = {"volume": abs(float(np.sum(grid.weights)) - SPHERE_VOLUME)}

        worst = 0.0
        for i in range(4):
            lap = laplace_beltrami(lambda y, i=i: y[..., i], x)
            worst = max(worst, float(np.max(np.abs(lap + 3.0 * x[..., i]))))
        result["laplace_omega"] = worst

        worst = 0.0
        for i in range(4):
            def psi_i(y, i=i):
                return linear_field(PHI_MINUS, y)[..., :, i]

            worst = max(worst, float(np.max(np.abs(sphere_hodge_laplacian(psi_i, x) - 3.0 * psi_i(x)))))
        result["hodge_psi"] = worst

        worst = 0.0
        for i in range(3):
            def phi_plus(y, i=i):
                return plus_in_minus_coframe(y)[..., i, :]

            def phi_minus(y, i=i):
                out = np.zeros(y.shape[:-1] + (3,))
                out[..., i] = 1.0
                return out

            for g in (phi_plus, phi_minus):
                worst = max(worst, float(np.max(np.abs(sphere_hodge_laplacian(g, x) - 4.0 * g(x)))))
        result["hodge_phi"] = worst

        if grid.layout == "gauss":
            omega = grid.nodes
            moments = grid.integrate(np.einsum("na,nb->nab", omega, omega))
            result["omega_moments"] = float(np.max(np.abs(moments - np.eye(4) * np.pi**2 / 2.0)))
            result["omega_mean"] = float(np.max(np.abs(grid.integrate(omega))))
        return result
