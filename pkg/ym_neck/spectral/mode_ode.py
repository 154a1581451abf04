"""Mode-wise solution of ``(d_t^2 - L) u = f`` on ``[-M, M] x S^3``.

Each eigenmode of ``L`` (eigenvalue ``lam^2``) gives the ODE
``A'' - lam^2 A = a`` on ``[-M, M]``. The particular solution depends on how
``lam`` compares with the decay rate ``alpha``:

* ``lam = 0``: the double integral from 0, so ``A(0) = A'(0) = 0``;
* ``0 < lam < alpha``: the one-sided kernel from 0, again ``A(0) = A'(0) = 0``;
* ``lam > alpha``: the two-sided decaying kernel with ``a`` extended by zero
  outside ``[-M, M]``, which is ``A' = lam A`` at ``-M`` and ``A' = -lam A``
  at ``M``.

All three are discretized with the fourth-order compact (Numerov) stencil
and solved as one sparse banded system. The reported residual is the
continuous defect of the result under an independent sixth-order stencil.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from scipy import sparse
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicSpline
from scipy.sparse.linalg import splu

from ym_neck.config.algebras import LieAlgebra
from ym_neck.core.errors import InputError, ResolutionError, ResonanceError
from .gaps import RESONANCE_TOLERANCE

LOGGER = logging.getLogger(__name__)

MIN_SAMPLES = 8
SPACING_TOLERANCE = 1e-9

# One-sided fourth-order first derivative at the left end
_ONE_SIDED = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0
# Central fourth-order first derivative
_CENTRAL = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
# Sixth-order central second derivative
_SECOND = np.array([2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0]) / 180.0


class ModeCase(Enum):
    """Which particular solution a mode receives."""

    ZERO = "case1"  # lam = 0, double integral from t = 0
    BELOW = "case2"  # 0 < lam < alpha, one-sided kernel from t = 0
    ABOVE = "case3"  # lam > alpha, two-sided decaying kernel


@dataclass(frozen=True, eq=False)
class ModeSignal:
    """Samples ``a(t)`` of one mode coefficient on a uniform grid over ``[-M, M]``.

    ``values`` has shape ``(nt, *value_shape)``; ``eigenvalue`` is ``lam^2``.
    """

    t: np.ndarray
    values: np.ndarray
    eigenvalue: float = 0.0
    mode: str = "mode"
    algebra: Optional[LieAlgebra] = None

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float).reshape(-1)
        values = np.asarray(self.values, dtype=float)
        if t.size == 0 or values.size == 0:
            raise InputError("empty signal")
        if values.shape[0] != t.size:
            raise InputError(f"Signal has {values.shape[0]} values for {t.size} samples")
        if not np.all(np.isfinite(values)):
            raise InputError(f"Signal {self.mode} has non-finite samples")
        if t.size > 1:
            steps = np.diff(t)
            if np.any(steps <= 0) or np.max(np.abs(steps - steps[0])) > SPACING_TOLERANCE * max(
                1.0, abs(steps[0])
            ):
                raise InputError(f"Signal {self.mode} is not uniformly sampled")
        if self.eigenvalue < 0:
            raise InputError(f"Eigenvalues must be nonnegative, got {self.eigenvalue}")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "values", values)

    @property
    def rate(self) -> float:
        return float(np.sqrt(self.eigenvalue))

    @property
    def half_length(self) -> float:
        return float(max(abs(self.t[0]), abs(self.t[-1])))

    @property
    def spacing(self) -> float:
        if self.t.size < 2:
            raise ResolutionError("A single sample has no spacing")
        return float(self.t[1] - self.t[0])

    def pointwise_norm(self, values: Optional[np.ndarray] = None) -> np.ndarray:
        values = self.values if values is None else values
        flat = values.reshape(values.shape[0], -1)
        scale = self.algebra.trace_scale if self.algebra is not None else 1.0
        return np.sqrt(np.sum(flat * flat, axis=1) / scale)

    @classmethod
    def uniform(cls, half_length: float, points_per_unit: int, func, **kwargs) -> "ModeSignal":
        """Sample ``func(t)`` on ``[-M, M]`` with ``t = 0`` on the grid."""
        count = int(round(half_length * points_per_unit))
        t = np.linspace(-half_length, half_length, 2 * count + 1)
        return cls(t=t, values=np.asarray(func(t), dtype=float), **kwargs)


@dataclass(frozen=True, eq=False)
class ModeSolution:
    """Samples ``A(t)`` with the case used, the scheme residual and ``C(M)``."""

    t: np.ndarray
    values: np.ndarray
    case: ModeCase
    residual: float
    decay_constant: float
    mode: str = "mode"
    eigenvalue: float = 0.0

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "eigenvalue": self.eigenvalue,
            "case": self.case.value,
            "residual": self.residual,
            "C_measured": self.decay_constant,
        }


def mode_case(rate: float, alpha: float) -> ModeCase:
    """Select the particular solution for a mode of rate ``lam``.

    Raises:
        ResonanceError: if ``lam`` equals ``alpha``
    """
    if abs(rate - alpha) <= RESONANCE_TOLERANCE:
        raise ResonanceError(f"resonance: alpha={alpha} equals the mode rate {rate:.12g}")
    if rate == 0:
        return ModeCase.ZERO
    if rate < alpha:
        return ModeCase.BELOW
    return ModeCase.ABOVE


def _numerov_rows(n: int, h: float, rate2: float):
    """Interior rows of ``A'' - lam^2 A = a`` and the matching right-hand-side operator."""
    off = 1.0 / h**2 - rate2 / 12.0
    mid = -2.0 / h**2 - 10.0 * rate2 / 12.0
    interior = sparse.diags(
        [np.full(n - 2, off), np.full(n - 2, mid), np.full(n - 2, off)],
        [0, 1, 2],
        shape=(n - 2, n),
    )
    forcing = sparse.diags(
        [np.full(n - 2, 1.0 / 12.0), np.full(n - 2, 10.0 / 12.0), np.full(n - 2, 1.0 / 12.0)],
        [0, 1, 2],
        shape=(n - 2, n),
    )
    return interior, forcing


def ode_residual(t: np.ndarray, A: np.ndarray, a: np.ndarray, rate2: float) -> np.ndarray:
    """Defect of ``A'' - lam^2 A = a`` at the interior samples.

    ``A''`` is taken with the explicit sixth-order central stencil, not the
    compact one the solver inverts, so for a Numerov solution the defect is
    its fourth-order discretization error and a wrong forcing or boundary
    rule shows up in full. The three samples at each end are skipped.

    Args:
        t: Uniform sample times
        A: Samples of the solution, shape ``(nt, *value_shape)``
        a: Samples of the forcing, same shape as ``A``
        rate2: The eigenvalue ``lam^2``

    Returns:
        Array of shape ``(nt - 6, *value_shape)``
    """
    h = t[1] - t[0]
    n = t.size
    second = sum(c * A[k : n - 6 + k] for k, c in enumerate(_SECOND)) / h**2
    return second - rate2 * A[3:-3] - a[3:-3]


def _center_index(t: np.ndarray) -> int:
    c = int(np.argmin(np.abs(t)))
    if abs(t[c]) > SPACING_TOLERANCE * max(1.0, t[-1] - t[0]):
        raise InputError("The signal grid must contain t = 0 for the one-sided kernels")
    if c < 2 or c > t.size - 3:
        raise ResolutionError("Too few samples on one side of t = 0")
    return c


def _boundary_rows(t: np.ndarray, case: ModeCase, rate: float) -> sparse.csr_matrix:
    n, h = t.size, t[1] - t[0]
    rows = sparse.lil_matrix((2, n))
    if case is ModeCase.ABOVE:
        # A'(-M) - lam A(-M) = 0
        rows[0, :5] = _ONE_SIDED / h
        rows[0, 0] = rows[0, 0] - rate
        # A'(M) + lam A(M) = 0; the right end stencil is the mirror image
        rows[1, n - 5 :] = -_ONE_SIDED[::-1] / h
        rows[1, n - 1] = rows[1, n - 1] + rate
        return rows.tocsr()
    c = _center_index(t)
    rows[0, c] = 1.0
    rows[1, c - 2 : c + 3] = _CENTRAL / h
    return rows.tocsr()


def solve_mode_ode(
    rate: float,
    a: ModeSignal,
    alpha: float,
    M: Optional[float] = None,
) -> ModeSolution:
    """Solve ``A'' - rate^2 A = a`` on the signal grid with the case rule above.

    Raises:
        ResonanceError: if ``rate`` equals ``alpha``
        ResolutionError: with fewer than 8 samples
        InputError: for a negative rate
    """
    if rate < 0:
        raise InputError(f"Mode rates must be nonnegative, got {rate}")
    if not alpha > 0:
        raise InputError(f"alpha must be positive, got {alpha}")
    t = a.t
    if t.size < MIN_SAMPLES:
        raise ResolutionError(f"signal has {t.size} samples, need at least {MIN_SAMPLES}")
    case = mode_case(rate, alpha)
    M = a.half_length if M is None else float(M)
    rate2 = rate * rate
    n, h = t.size, a.spacing

    interior, forcing = _numerov_rows(n, h, rate2)
    boundary = _boundary_rows(t, case, rate)
    system = sparse.vstack([boundary, interior]).tocsc()
    flat = a.values.reshape(n, -1)
    rhs = np.vstack([np.zeros((2, flat.shape[1])), forcing @ flat])
    A = splu(system).solve(rhs).reshape(a.values.shape)

    residual = ode_residual(t, A, a.values, rate2)
    scale = max(float(np.max(np.abs(a.values))), np.finfo(float).tiny)
    relative = float(np.max(np.abs(residual))) / scale
    weight = np.exp(alpha * M - alpha * np.abs(t))
    decay_constant = float(np.max(a.pointwise_norm(A) * weight))
    LOGGER.debug(
        "Mode %s (lam^2=%.6g): %s, residual %.3e, C=%.6g",
        a.mode,
        rate2,
        case.value,
        relative,
        decay_constant,
    )
    return ModeSolution(
        t=t,
        values=A,
        case=case,
        residual=relative,
        decay_constant=decay_constant,
        mode=a.mode,
        eigenvalue=rate2,
    )


@dataclass(frozen=True, eq=False)
class LowModeSolution:
    """Samples of ``h`` on ``t`` from :func:`low_mode_ode`, integrated out from ``center``."""
    t: np.ndarray
    values: np.ndarray
    center: float


def low_mode_ode(
    t: np.ndarray,
    v: np.ndarray,
    h_center,
    dh_center,
    center: float,
    eigenvalue: float = 3.0,
    rtol: float = 1e-11,
    atol: float = 1e-13,
) -> LowModeSolution:
    """Integrate ``h'' - eigenvalue h = v`` outward from ``center`` in both directions.

    ``v`` holds samples on ``t`` (shape ``(nt, *value_shape)``) and is
    interpolated by a cubic spline; ``h_center`` and ``dh_center`` are the
    data at the centre.
    """
    t = np.asarray(t, dtype=float)
    v = np.asarray(v, dtype=float)
    if t.size < 4 or v.shape[0] != t.size:
        raise InputError("low_mode_ode needs at least four samples matching t")
    if not t[0] <= center <= t[-1]:
        raise InputError(f"Centre {center} lies outside [{t[0]}, {t[-1]}]")
    value_shape = v.shape[1:]
    width = int(np.prod(value_shape, dtype=int))
    spline = CubicSpline(t, v.reshape(t.size, width), axis=0)
    h0 = np.broadcast_to(np.asarray(h_center, dtype=float), value_shape).reshape(width)
    dh0 = np.broadcast_to(np.asarray(dh_center, dtype=float), value_shape).reshape(width)

    def rhs(s, y):
        return np.concatenate([y[width:], eigenvalue * y[:width] + spline(s)])

    y0 = np.concatenate([h0, dh0])
    out = np.empty((t.size, width))
    for mask, end in ((t >= center, t[-1]), (t < center, t[0])):
        if not np.any(mask):
            continue
        points = t[mask] if end > center else t[mask][::-1]
        if end == center:
            out[mask] = h0
            continue
        sol = solve_ivp(
            rhs, (center, end), y0, method="DOP853", t_eval=points, rtol=rtol, atol=atol
        )
        if not sol.success:
            raise ResolutionError(f"Low-mode integration failed: {sol.message}")
        values = sol.y[:width].T
        out[mask] = values if end > center else values[::-1]
    return LowModeSolution(t=t, values=out.reshape(v.shape), center=float(center))
