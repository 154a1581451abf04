"""Pohozaev-type flux integrals over neck slices.

For a vector field ``X`` on the cylinder the integrand
``<i_X F, i_dt F> - 1/4 |F|^2 <X, dt>`` is ``S(X, dt)``; its integral over
``{t} x S^3`` is constant in ``t`` when ``F`` is Yang-Mills and ``X`` is
Killing. Near the neck centre a field with boundary data ``F^L`` (body) and
``F^R`` (bubble) looks like

    F ~ e^{2t} sum_i (F^L_{+,i} P_{+,i} + F^L_{-,i} P_{-,i})
      + lam^2 e^{-2t} sum_i (F^R_{-,i} Q_{+,i} + F^R_{+,i} Q_{-,i})

and the flux integrals then have closed forms in the pairings ``<F^L, F^R>``.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Optional

import numpy as np

from ym_neck.core.errors import InputError
from ym_neck.fields.curvature import CurvatureField
from ym_neck.forms.cylinder import CANONICAL_FIELDS, p_form, q_form, vector_field
from ym_neck.geometry.quadrature import CylinderGrid
from ym_neck.geometry.s3 import SPHERE_VOLUME, check_index
from .stress import stress_components

if TYPE_CHECKING:
    from .residuals import BoundaryData

LOGGER = logging.getLogger(__name__)


def _slice_curvature(F: CurvatureField, t: float) -> np.ndarray:
    grid = F.grid
    pad = 1e-9 * max(1.0, abs(t))
    if t < grid.t[0] - pad or t > grid.t[-1] + pad:
        raise InputError(f"slice out of range: t={t} outside [{grid.t[0]}, {grid.t[-1]}]")
    nearest = int(np.argmin(np.abs(grid.t - t)))
    if abs(grid.t[nearest] - t) <= pad:
        return F.W[nearest]
    if F.source is None:
        # Sampled fields only know their own slices
        return F.W[grid.slice_index(t)]
    return F.source.cylinder_curvature(np.exp(t) * grid.sphere.nodes)


def pohozaev_integrand(F: CurvatureField, X: str, t: float) -> np.ndarray:
    """``S(X, dt)`` at the nodes of the slice ``{t} x S^3``."""
    nodes = F.grid.sphere.nodes
    V = vector_field(X, nodes)  # (N, 4)
    S = stress_components(_slice_curvature(F, t), F.algebra.trace_scale)
    return np.einsum("na,na->n", V, S[:, :, 0])


def pohozaev_integral(F: CurvatureField, X: str, t: float) -> float:
    """Quadrature of ``<i_X F, i_dt F> - 1/4 |F|^2 <X, dt>`` over ``{t} x S^3``.

    ``X`` is one of ``"dt"``, ``"X+1"``..``"X+3"``, ``"X-1"``..``"X-3"``.

    Raises:
        InputError: if ``t`` lies outside the field's slices or ``X`` is unknown
    """
    value = float(F.grid.sphere.integrate(pohozaev_integrand(F, X, t)))
    LOGGER.debug("Pohozaev integral of %s at t=%.6g: %.12g", X, t, value)
    return value


def _pairing(left: np.ndarray, right: np.ndarray, scale: float) -> np.ndarray:
    """``G[i, j] = <left_i, right_j>``."""
    return np.einsum("iab,jab->ij", left, right) / scale


def _parse_field(X: str):
    key = X.strip().lower().replace("_", "").replace(",", "")
    if key in ("dt", "d/dt", "t"):
        return "dt", None
    if len(key) == 3 and key[0] == "x" and key[1] in "+-":
        return key[1], check_index(int(key[2]), 3)
    raise InputError(f"Unknown vector field: {X!r}")


def pohozaev_closed_form(data: "BoundaryData", X: str, lam: float) -> float:
    """Leading-order neck flux for boundary data ``data`` at scale ``lam``."""
    scale = data.algebra.trace_scale
    kind, j = _parse_field(X)
    if kind == "dt":
        trace = np.trace(_pairing(data.FL_plus, data.FR_minus, scale)) + np.trace(
            _pairing(data.FL_minus, data.FR_plus, scale)
        )
        return float(-8.0 * lam**2 * SPHERE_VOLUME * trace)
    k, m = (j + 1) % 3, (j + 2) % 3
    if kind == "+":
        G = _pairing(data.FL_plus, data.FR_minus, scale)
        return float(8.0 * lam**2 * SPHERE_VOLUME * (G[k, m] - G[m, k]))
    G = _pairing(data.FL_minus, data.FR_plus, scale)
    return float(-8.0 * lam**2 * SPHERE_VOLUME * (G[k, m] - G[m, k]))


def synthetic_neck_field(
    data: "BoundaryData", lam: float, grid: CylinderGrid
) -> CurvatureField:
    """The two-sided curvature profile described by ``data`` at scale ``lam``."""
    nodes = grid.sphere.nodes
    body = np.zeros(nodes.shape[:-1] + (4, 4) + data.algebra.shape)
    bubble = np.zeros_like(body)
    for i in (1, 2, 3):
        k = i - 1
        body += np.einsum("nab,ij->nabij", p_form("+", i, nodes).components, data.FL_plus[k])
        body += np.einsum("nab,ij->nabij", p_form("-", i, nodes).components, data.FL_minus[k])
        bubble += np.einsum("nab,ij->nabij", q_form("+", i, nodes).components, data.FR_minus[k])
        bubble += np.einsum("nab,ij->nabij", q_form("-", i, nodes).components, data.FR_plus[k])
    growth = np.exp(2 * grid.t)[:, None, None, None, None, None]
    decay = (lam**2 * np.exp(-2 * grid.t))[:, None, None, None, None, None]
    W = growth * body[None] + decay * bubble[None]
    return CurvatureField(W, grid, data.algebra)


def flux_table(F: CurvatureField, t: float, fields: Optional[tuple] = None) -> dict:
    """Pohozaev integrals of every canonical field at one slice."""
    return {X: pohozaev_integral(F, X, t) for X in (fields or CANONICAL_FIELDS)}
