"""Two-sided exponential envelope of the curvature along the neck."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.optimize import nnls

from ym_neck.core.errors import DegenerateFitError, ResolutionError
from .curvature import CurvatureField
from .sampling import NeckGeometry

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class DecayProfile:
    """Fit of ``sup|F|(t) ~ C1 e^2t + C2 lam^2 e^-2t`` over the neck.

    ``residual`` is the per-slice relative deviation of the fit;
    ``slope_body`` and ``slope_bubble`` are least-squares slopes of
    ``log sup|F|`` over the body half and the bubble half of the neck.
    """

    t: np.ndarray
    sup_norm: np.ndarray
    c1: float
    c2: float
    residual: np.ndarray
    slope_body: float
    slope_bubble: float

    @property
    def max_residual(self) -> float:
        return float(np.max(self.residual))

    def envelope(self, t, lam: float) -> np.ndarray:
        """Fitted ``c1 e^{2t} + c2 lam^2 e^{-2t}`` at ``t``."""
        t = np.asarray(t, dtype=float)
        return self.c1 * np.exp(2 * t) + self.c2 * lam**2 * np.exp(-2 * t)


def _log_slope(t: np.ndarray, values: np.ndarray) -> float:
    mask = values > 0
    if np.count_nonzero(mask) < 2:
        return float("nan")
    slope, _ = np.polyfit(t[mask], np.log(values[mask]), 1)
    return float(slope)


def decay_profile(F: CurvatureField, geom: NeckGeometry) -> DecayProfile:
    """Measure the two-exponential envelope of ``F`` along the neck.

    Raises:
        DegenerateFitError: if the curvature vanishes identically
        ResolutionError: with fewer than three slices
    """
    t = F.grid.t
    if t.size < 3:
        raise ResolutionError(f"decay fit needs at least 3 slices, got {t.size}")
    sup = F.sup_norm()
    if not np.any(sup > 0):
        raise DegenerateFitError("degenerate fit: curvature vanishes on every slice")
    positive = sup > 0
    design = np.stack([np.exp(2 * t), geom.lam**2 * np.exp(-2 * t)], axis=1)
    weights = np.where(positive, 1.0 / np.where(positive, sup, 1.0), 0.0)
    coeffs, _ = nnls(design * weights[:, None], sup * weights)
    c1, c2 = (float(c) for c in coeffs)
    fitted = design @ coeffs
    residual = np.where(positive, np.abs(fitted - sup) / np.where(positive, sup, 1.0), 0.0)

    body = t >= geom.center
    bubble = t <= geom.center
    profile = DecayProfile(
        t=t,
        sup_norm=sup,
        c1=c1,
        c2=c2,
        residual=residual,
        slope_body=_log_slope(t[body], sup[body]),
        slope_bubble=_log_slope(t[bubble], sup[bubble]),
    )
    LOGGER.debug(
        "Decay fit: C1=%.6g C2=%.6g max residual=%.3e slopes=(%.4f, %.4f)",
        c1,
        c2,
        profile.max_residual,
        profile.slope_body,
        profile.slope_bubble,
    )
    return profile
