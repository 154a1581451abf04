"""Solve ``(d_t^2 - L) u = f`` on a finite cylinder mode by mode and resum."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Optional, Tuple

import numpy as np

from ym_neck.core.errors import InputError, OutOfBasisError
from ym_neck.geometry.form_field import FormField, FormKind
from ym_neck.geometry.modes import mode_table, project_onto_modes, reconstruct
from .mode_ode import ModeSignal, ModeSolution, solve_mode_ode

LOGGER = logging.getLogger(__name__)

OUT_OF_BASIS_THRESHOLD = 1e-8
STABILITY_TOLERANCE = 0.10


@dataclass(frozen=True, eq=False)
class CylinderSolution:
    """The resummed solution with per-mode reports and the measured ``C(M)``."""

    u: FormField
    modes: Tuple[ModeSolution, ...]
    decay_constant: float
    residual: float
    out_of_basis_fraction: float
    alpha: float
    half_length: float

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "M": self.half_length,
            "C_measured": self.decay_constant,
            "residual": self.residual,
            "out_of_basis_fraction": self.out_of_basis_fraction,
            "modes": [m.to_dict() for m in self.modes],
        }


def _split(f: FormField):
    """``(degree, samples)`` parts of a cylinder field."""
    if f.kind is FormKind.FUNCTION:
        return [(0, f.values)]
    if f.kind is FormKind.SPHERE_ONE_FORM:
        return [(1, f.values)]
    return [(0, f.values[:, :, 0]), (1, f.values[:, :, 1:])]


def _solve_part(
    degree: int,
    samples: np.ndarray,
    f: FormField,
    alpha: float,
    M: float,
    threshold: float,
):
    projection = project_onto_modes(samples, degree, f.grid, lead_ndim=1)
    fraction = projection.max_fraction
    if fraction > threshold:
        raise OutOfBasisError(
            f"f has {fraction:.3e} of its energy outside the degree-{degree} mode table "
            f"(threshold {threshold:.1e})",
            fraction=fraction,
        )
    coefficients = projection.coefficients  # (nt, modes, *value)
    solved = np.zeros_like(coefficients)
    reports = []
    for index, mode in enumerate(mode_table(degree)):
        signal = ModeSignal(
            t=f.t,
            values=coefficients[:, index],
            eigenvalue=mode.eigenvalue,
            mode=mode.name,
            algebra=f.algebra,
        )
        solution = solve_mode_ode(signal.rate, signal, alpha, M)
        solved[:, index] = solution.values
        reports.append(solution)
    u = reconstruct(solved, degree, f.grid, lead_ndim=1)
    return u, reports, fraction


def solve_cylinder(
    f: FormField,
    alpha: float,
    threshold: float = OUT_OF_BASIS_THRESHOLD,
) -> CylinderSolution:
    """Mode-wise solve of ``(d_t^2 - L) u = f`` with ``L`` the (Hodge) Laplacian of S^3.

    ``f`` is a cylinder field over ``[-M, M]``; functions use the scalar
    table, sphere one-forms the one-form table, and cylinder one-forms
    split into their ``dt`` and tangential parts.

    Raises:
        InputError: if ``f`` is not sampled over t-slices
        OutOfBasisError: if ``f`` carries energy outside the mode table
        ResonanceError: if ``alpha`` equals a mode rate
    """
    if not f.is_cylinder:
        raise InputError("solve_cylinder needs a field sampled on t-slices")
    M = float(max(abs(f.t[0]), abs(f.t[-1])))
    pieces = []
    reports = []
    worst = 0.0
    for degree, samples in _split(f):
        u_part, part_reports, fraction = _solve_part(degree, samples, f, alpha, M, threshold)
        pieces.append((degree, u_part))
        reports.extend(part_reports)
        worst = max(worst, fraction)

    if f.kind is FormKind.CYLINDER_ONE_FORM:
        u_values = np.concatenate([pieces[0][1][:, :, None], pieces[1][1]], axis=2)
    else:
        u_values = pieces[0][1]
    u = f.with_values(u_values)

    flat = u_values.reshape(u_values.shape[0], u_values.shape[1], -1)
    scale = f.algebra.trace_scale if f.algebra is not None else 1.0
    pointwise = np.sqrt(np.sum(flat * flat, axis=-1) / scale)
    weight = np.exp(alpha * M - alpha * np.abs(f.t))
    decay_constant = float(np.max(np.max(pointwise, axis=1) * weight, initial=0.0))
    residual = max((r.residual for r in reports), default=0.0)
    LOGGER.debug("Cylinder solve over [-%g, %g]: C=%.6g residual=%.3e", M, M, decay_constant, residual)
    return CylinderSolution(
        u=u,
        modes=tuple(reports),
        decay_constant=decay_constant,
        residual=residual,
        out_of_basis_fraction=worst,
        alpha=alpha,
        half_length=M,
    )


@dataclass(frozen=True)
class DecaySweep:
    """Measured ``C(M)`` over several half-lengths."""

    constants: Dict[float, float]

    @property
    def variation(self) -> float:
        """``(max C - min C) / max C``; 0 when every constant vanishes."""
        values = np.array(list(self.constants.values()))
        top = float(np.max(values, initial=0.0))
        return 0.0 if top == 0 else float((top - np.min(values)) / top)

    def stable(self, tolerance: float = STABILITY_TOLERANCE) -> bool:
        """True if the constants vary by less than ``tolerance`` across half-lengths."""
        return self.variation < tolerance


def sweep_half_lengths(
    build: Callable[[float], FormField],
    alpha: float,
    half_lengths: Iterable[float] = (5.0, 10.0, 20.0),
    threshold: Optional[float] = None,
) -> DecaySweep:
    """Solve ``build(M)`` for each ``M`` and collect the decay constants."""
    constants = {}
    for M in half_lengths:
        kwargs = {} if threshold is None else {"threshold": threshold}
        constants[float(M)] = solve_cylinder(build(float(M)), alpha, **kwargs).decay_constant
    sweep = DecaySweep(constants=constants)
    LOGGER.info("C(M) sweep: %s (variation %.3f)", constants, sweep.variation)
    return sweep
