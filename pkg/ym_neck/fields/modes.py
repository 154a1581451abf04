"""Extraction of the harmonic neck expansion from a sampled connection.

The harmonic part of a connection on the neck reads

    f  = a + b t + sum_i (at_i e^{sqrt3 t} + bt_i e^{-sqrt3 (t - log lam)}) omega_i
    xi = sum_i (a_i e^{sqrt3 t} + b_i e^{-sqrt3 (t - log lam)}) psi_i
       + sum_{s,i} (c_{s,i} e^{2t} + d_{s,i} e^{-2 (t - log lam)}) phi_{s,i}

with matrix coefficients. Each sphere mode amplitude is projected per slice
and then split in t by a two-column least-squares fit.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from ym_neck.core.errors import DegenerateFitError, InputError, ResolutionError
from ym_neck.geometry.modes import project_onto_modes, reconstruct
from ym_neck.geometry.quadrature import CylinderGrid
from .sampling import GaugeField, NeckGeometry

LOGGER = logging.getLogger(__name__)

MIN_SLICES = 8
MIN_SPAN = 1.0
MAX_CONDITION = 1e10

SQRT3 = float(np.sqrt(3.0))

# Coefficient groups in report order: name -> (size, description)
COEFFICIENT_GROUPS: Tuple[Tuple[str, int], ...] = (
    ("a", 1),
    ("b", 1),
    ("a_tilde", 4),
    ("b_tilde", 4),
    ("a_psi", 4),
    ("b_psi", 4),
    ("c_plus", 3),
    ("c_minus", 3),
    ("d_plus", 3),
    ("d_minus", 3),
)


def two_sided_design(t: np.ndarray, mu: float, log_lam: float) -> np.ndarray:
    """Columns ``e^{mu t}`` and ``e^{-mu (t - log lam)}``; ``mu = 0`` gives ``1, t``."""
    t = np.asarray(t, dtype=float)
    if mu == 0:
        return np.stack([np.ones_like(t), t], axis=1)
    return np.stack([np.exp(mu * t), np.exp(-mu * (t - log_lam))], axis=1)


def fit_two_sided(t: np.ndarray, amplitudes: np.ndarray, mu: float, log_lam: float) -> np.ndarray:
    """Least-squares split of per-slice amplitudes into the two exponentials.

    ``amplitudes`` has shape ``(nt, ...)``; returns ``(2, ...)``.

    Raises:
        DegenerateFitError: if the slices span less than unit length or the
            column-normalized design is ill-conditioned
    """
    t = np.asarray(t, dtype=float)
    if t.max() - t.min() < MIN_SPAN:
        raise DegenerateFitError(
            f"ill-conditioned regression: slices span {t.max() - t.min():.3g} < {MIN_SPAN}"
        )
    design = two_sided_design(t, mu, log_lam)
    scale = np.linalg.norm(design, axis=0)
    normalized = design / scale
    cond = np.linalg.cond(normalized)
    if not np.isfinite(cond) or cond > MAX_CONDITION:
        raise DegenerateFitError(f"ill-conditioned regression: condition number {cond:.3e}")
    flat = amplitudes.reshape(t.size, -1)
    solution, *_ = np.linalg.lstsq(normalized, flat, rcond=None)
    solution = solution / scale[:, None]
    return solution.reshape((2,) + amplitudes.shape[1:])


@dataclass(frozen=True, eq=False)
class NeckExpansion:
    """Matrix coefficients of the harmonic neck expansion plus the remainder."""

    a: np.ndarray
    b: np.ndarray
    a_tilde: np.ndarray  # (4, n, n) coefficients of e^{sqrt3 t} omega_i
    b_tilde: np.ndarray  # (4, n, n) coefficients of e^{-sqrt3 (t - log lam)} omega_i
    a_psi: np.ndarray  # (4, n, n) coefficients of e^{sqrt3 t} psi_i
    b_psi: np.ndarray  # (4, n, n)
    c_plus: np.ndarray  # (3, n, n) coefficients of e^{2t} phi_{+,i}
    c_minus: np.ndarray
    d_plus: np.ndarray  # (3, n, n) coefficients of e^{-2 (t - log lam)} phi_{+,i}
    d_minus: np.ndarray
    lam: float
    t: np.ndarray
    remainder_norm: np.ndarray
    delta: float = float("nan")
    remainder: np.ndarray = field(default=None, repr=False)

    @property
    def log_lam(self) -> float:
        return float(np.log(self.lam))

    def coefficients(self) -> Dict[str, np.ndarray]:
        """All coefficient groups by name, in report order."""
        return {name: getattr(self, name) for name, _ in COEFFICIENT_GROUPS}

    def scalar_mode_amplitudes(self, t: np.ndarray) -> np.ndarray:
        """Per-slice amplitudes of ``f`` on ``(1, omega_1..4)``: ``(nt, 5, n, n)``."""
        t = np.asarray(t, dtype=float)
        e_plus = np.exp(SQRT3 * t)[:, None, None, None]
        e_minus = np.exp(-SQRT3 * (t - self.log_lam))[:, None, None, None]
        const = self.a[None] + t[:, None, None] * self.b[None]
        omega = e_plus * self.a_tilde[None] + e_minus * self.b_tilde[None]
        return np.concatenate([const[:, None], omega], axis=1)

    def one_form_mode_amplitudes(self, t: np.ndarray) -> np.ndarray:
        """Per-slice amplitudes of ``xi`` on the one-form table: ``(nt, 10, n, n)``."""
        t = np.asarray(t, dtype=float)
        s_plus = np.exp(SQRT3 * t)[:, None, None, None]
        s_minus = np.exp(-SQRT3 * (t - self.log_lam))[:, None, None, None]
        e_plus = np.exp(2 * t)[:, None, None, None]
        e_minus = np.exp(-2 * (t - self.log_lam))[:, None, None, None]
        psi = s_plus * self.a_psi[None] + s_minus * self.b_psi[None]
        phi_plus = e_plus * self.c_plus[None] + e_minus * self.d_plus[None]
        phi_minus = e_plus * self.c_minus[None] + e_minus * self.d_minus[None]
        return np.concatenate([psi, phi_plus, phi_minus], axis=1)

    def mode_components(self, grid: CylinderGrid) -> np.ndarray:
        """Samples of the expansion (without remainder), shape ``(nt, N, 4, n, n)``."""
        f = reconstruct(self.scalar_mode_amplitudes(grid.t), 0, grid.sphere, lead_ndim=1)
        xi = reconstruct(self.one_form_mode_amplitudes(grid.t), 1, grid.sphere, lead_ndim=1)
        return np.concatenate([f[:, :, None], xi], axis=2)


def expansion_from_amplitudes(
    t: np.ndarray,
    scalar: np.ndarray,
    one_form: np.ndarray,
    lam: float,
) -> Dict[str, np.ndarray]:
    """Split per-slice mode amplitudes into the named expansion coefficients."""
    log_lam = float(np.log(lam))
    const = fit_two_sided(t, scalar[:, 0], 0.0, log_lam)
    omega = fit_two_sided(t, scalar[:, 1:], SQRT3, log_lam)
    psi = fit_two_sided(t, one_form[:, :4], SQRT3, log_lam)
    phi_plus = fit_two_sided(t, one_form[:, 4:7], 2.0, log_lam)
    phi_minus = fit_two_sided(t, one_form[:, 7:], 2.0, log_lam)
    return {
        "a": const[0],
        "b": const[1],
        "a_tilde": omega[0],
        "b_tilde": omega[1],
        "a_psi": psi[0],
        "b_psi": psi[1],
        "c_plus": phi_plus[0],
        "c_minus": phi_minus[0],
        "d_plus": phi_plus[1],
        "d_minus": phi_minus[1],
    }


def extract_neck_modes(A: GaugeField, geom: NeckGeometry = None) -> NeckExpansion:
    """Project ``A`` slice by slice onto the mode table and split in t.

    Raises:
        ResolutionError: with fewer than 8 slices
        DegenerateFitError: if the slices are too close for the regression
    """
    geom = geom or A.geometry
    if geom is None:
        raise InputError("Mode extraction needs the neck scales (lambda, delta)")
    grid = A.grid
    if grid.t.size < MIN_SLICES:
        raise ResolutionError(f"too few slices: {grid.t.size} < {MIN_SLICES}")
    sphere = grid.sphere
    scalar = project_onto_modes(A.f, 0, sphere, lead_ndim=1).coefficients
    one_form = project_onto_modes(A.xi, 1, sphere, lead_ndim=1).coefficients
    coefficients = expansion_from_amplitudes(grid.t, scalar, one_form, geom.lam)

    expansion = NeckExpansion(
        **coefficients,
        lam=geom.lam,
        delta=geom.delta,
        t=grid.t,
        remainder_norm=np.zeros(grid.t.size),
    )
    remainder = A.components - expansion.mode_components(grid)
    norm2 = np.einsum("n,tncij,tncij->t", sphere.weights, remainder, remainder)
    norm = np.sqrt(np.maximum(norm2, 0.0) / A.algebra.trace_scale)
    LOGGER.debug("Extracted neck modes: max remainder %.3e", float(np.max(norm)))
    return NeckExpansion(
        **coefficients,
        lam=geom.lam,
        delta=geom.delta,
        t=grid.t,
        remainder_norm=norm,
        remainder=remainder,
    )
