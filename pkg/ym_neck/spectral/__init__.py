"""Spectral machinery on finite cylinders: mode solver, Hodge split, norms and the gauge functional."""

from .cylinder_solver import CylinderSolution, DecaySweep, solve_cylinder, sweep_half_lengths
from .gaps import SpectralGaps, WeightedNormKind
from .gauge import (
    GaugeFunctionalValue,
    LowModeFit,
    fit_low_modes,
    gauge_functional,
    gauge_linearization,
    psi_project,
    y_norm,
)
from .hodge import harmonic_expansion, harmonic_residual, hodge_laplacian, hodge_split
from .mode_ode import (
    LowModeSolution,
    ModeCase,
    ModeSignal,
    ModeSolution,
    low_mode_ode,
    mode_case,
    solve_mode_ode,
)
from .norms import slice_holder_norm, weighted_norm, window_norms
from .signals_io import example_signals, parse_signals, read_signals, truncate_signal, write_solutions

__all__ = [
    # Gaps
    "SpectralGaps",
    "WeightedNormKind",
    # Mode ODEs
    "ModeCase",
    "ModeSignal",
    "ModeSolution",
    "LowModeSolution",
    "mode_case",
    "solve_mode_ode",
    "low_mode_ode",
    # Cylinder solver
    "CylinderSolution",
    "DecaySweep",
    "solve_cylinder",
    "sweep_half_lengths",
    # Hodge split
    "hodge_split",
    "hodge_laplacian",
    "harmonic_expansion",
    "harmonic_residual",
    # Norms and gauge functional
    "weighted_norm",
    "window_norms",
    "slice_holder_norm",
    "psi_project",
    "GaugeFunctionalValue",
    "gauge_functional",
    "gauge_linearization",
    "LowModeFit",
    "fit_low_modes",
    "y_norm",
    # Signals
    "parse_signals",
    "read_signals",
    "write_solutions",
    "example_signals",
    "truncate_signal",
]
