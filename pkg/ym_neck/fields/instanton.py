"""The charge-one instanton family and the bubble seen through the neck.

With the quaternionic su(2) basis ``q_i`` the anti-self-dual instanton of
scale ``rho`` centred at ``a`` is

    A_nu = sum_i (Phi_{-,i} (x - a))_nu (-q_i) / (rho^2 + |x - a|^2)

whose curvature at the centre is ``2 sum_i Phi_{-,i} q_i / rho^2``. The
self-dual member uses ``Phi_{+,i}`` with the triple ``+q_i``, so its curvature
at the centre is ``-2 sum_i Phi_{+,i} q_i / rho^2`` and its SD boundary triple
is ``F_{+,i} = -q_i``.

The sign differs from the ASD member on purpose. The triple in the potential
must bracket opposite to its two-forms: ``[Phi_{-,i}, Phi_{-,j}] = 2 eps_ijk
Phi_{-,k}`` pairs with ``-q_i``, while ``[Phi_{+,i}, Phi_{+,j}] = -2 eps_ijk
Phi_{+,k}`` pairs with ``+q_i``. A constant gauge rotates the triple by SO(3)
and never by ``-1``, so no SD instanton has ``F(0) = 2 sum_i Phi_{+,i} q_i``.
"""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from ym_neck.config.algebras import AlgebraRegistry, LieAlgebra
from ym_neck.core.errors import InputError
from ym_neck.geometry.s3 import EPSILON, PHI_MINUS, PHI_PLUS, sign_value
from .connection import ConnectionForm

LOGGER = logging.getLogger(__name__)


def _orientation(orientation) -> int:
    if isinstance(orientation, str):
        key = orientation.strip().lower()
        if key in ("asd", "anti-self-dual", "-"):
            return -1
        if key in ("sd", "self-dual", "+"):
            return 1
        raise InputError(f"Orientation must be 'sd' or 'asd', got {orientation!r}")
    return sign_value(orientation)


def _instanton_algebra(algebra: Optional[LieAlgebra]) -> LieAlgebra:
    algebra = algebra or AlgebraRegistry.SU2
    if algebra.basis is None or algebra.dimension != 3:
        raise InputError(f"Instantons need a 3-dimensional algebra with a basis, got {algebra.name}")
    q = algebra.basis
    structure = np.einsum("iab,jbc->ijac", q, q) - np.einsum("jab,ibc->ijac", q, q)
    expected = 2.0 * np.einsum("ijk,kac->ijac", EPSILON, q)
    if np.max(np.abs(structure - expected)) > 1e-12:
        raise InputError(f"Algebra {algebra.name} basis does not satisfy [e_i, e_j] = 2 eps_ijk e_k")
    return algebra


def _instanton_data(orientation, algebra: LieAlgebra):
    s = _orientation(orientation)
    if s < 0:
        return PHI_MINUS, -algebra.basis
    return PHI_PLUS, algebra.basis


def bpst_connection(
    center=(0.0, 0.0, 0.0, 0.0),
    scale: float = 1.0,
    orientation="asd",
    algebra: Optional[LieAlgebra] = None,
) -> ConnectionForm:
    """The standard charge-one instanton with exact derivatives.

    Raises:
        InputError: for a nonpositive scale or an unsuitable algebra
    """
    if not scale > 0:
        raise InputError(f"Instanton scale must be positive, got {scale}")
    algebra = _instanton_algebra(algebra)
    a = np.asarray(center, dtype=float)
    if a.shape != (4,):
        raise InputError(f"Instanton centre must be a point of R^4, got shape {a.shape}")
    M, e = _instanton_data(orientation, algebra)
    rho2 = float(scale) ** 2

    def potential(points):
        y = points - a
        D = rho2 + np.sum(y * y, axis=-1)
        My = np.einsum("iab,...b->...ia", M, y)
        return np.einsum("...ia,ijk->...ajk", My, e) / D[..., None, None, None]

    def jacobian(points):
        y = points - a
        D = (rho2 + np.sum(y * y, axis=-1))[..., None, None, None, None]
        My = np.einsum("iab,...b->...ia", M, y)
        first = np.einsum("inm,ijk->mnjk", M, e)  # (M_i)_{nu mu} e_i at [mu, nu]
        second = np.einsum("...m,...in,ijk->...mnjk", y, My, e)
        return first / D - 2.0 * second / D**2

    label = f"bpst({'asd' if _orientation(orientation) < 0 else 'sd'}, scale={scale:g})"
    return ConnectionForm(potential=potential, algebra=algebra, jacobian=jacobian, label=label)


def bubble_connection(
    lam: float, orientation="asd", algebra: Optional[LieAlgebra] = None
) -> ConnectionForm:
    """The unit instanton of the bubble chart pulled back through ``y = lam x / |x|^2``.

    ``orientation`` refers to the bubble's own chart. Along the neck the
    ASD bubble reads ``A(X_{-,j}) = lam^2 e^-2t / (1 + lam^2 e^-2t) q_j``
    with ``A(d/dt) = 0``.
    """
    if not lam > 0:
        raise InputError(f"Bubble scale must be positive, got {lam}")
    chart = bpst_connection(scale=1.0, orientation=orientation, algebra=algebra)
    eye = np.eye(4)

    def _pieces(points):
        r2 = np.sum(points * points, axis=-1)[..., None, None]
        outer = points[..., :, None] * points[..., None, :]
        J = lam * (eye / r2 - 2.0 * outer / r2**2)  # J[nu, mu] = d y_nu / d x_mu
        y = lam * points / r2[..., 0]
        return r2, J, y

    def potential(points):
        _, J, y = _pieces(points)
        return np.einsum("...nm,...njk->...mjk", J, chart(y))

    def jacobian(points):
        r2, J, y = _pieces(points)
        x = points
        r4 = r2**2
        r6 = r2**3
        # dJ[k, nu, mu] = d_k J[nu, mu]
        dJ = (
            -2.0 * np.einsum("...k,nm->...knm", x, eye) / r4[..., None]
            - 2.0 * np.einsum("nk,...m->...knm", eye, x) / r4[..., None]
            - 2.0 * np.einsum("...n,mk->...knm", x, eye) / r4[..., None]
            + 8.0 * np.einsum("...n,...m,...k->...knm", x, x, x) / r6[..., None]
        )
        dJ = lam * dJ
        Ay = chart(y)
        dAy = chart.derivatives(y)  # [rho, nu]
        first = np.einsum("...knm,...nab->...kmab", dJ, Ay)
        second = np.einsum("...nm,...rnab,...rk->...kmab", J, dAy, J)
        return first + second

    o = "asd" if _orientation(orientation) < 0 else "sd"
    return ConnectionForm(
        potential=potential,
        algebra=chart.algebra,
        jacobian=jacobian,
        inner_radius=0.0,
        label=f"bubble({o}, lambda={lam:g})",
    )


def neck_connection(
    lam: float,
    orientation="asd",
    body_orientation=None,
    algebra: Optional[LieAlgebra] = None,
) -> ConnectionForm:
    """Bubble of scale ``lam`` plus, optionally, a unit body instanton at the origin."""
    bubble = bubble_connection(lam, orientation, algebra)
    if body_orientation is None:
        return bubble
    body = bpst_connection(scale=1.0, orientation=body_orientation, algebra=bubble.algebra)
    LOGGER.debug("Neck connection: %s + %s", bubble.label, body.label)
    return bubble + body


def instanton_curvature_at_center(orientation="asd", algebra: Optional[LieAlgebra] = None) -> np.ndarray:
    """Closed-form ``F(0)`` of the unit instanton, shape ``(4, 4, n, n)``."""
    algebra = _instanton_algebra(algebra)
    M, e = _instanton_data(orientation, algebra)
    return -2.0 * np.einsum("imn,ijk->mnjk", M, e)
