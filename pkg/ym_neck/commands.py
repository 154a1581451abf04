"""Batch commands behind the ``ym-neck`` subcommands.

Each command takes a resolved ``RunConfig`` and returns the report it
produced together with the process exit code. Rendering and writing are
left to the CLI.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List

from ym_neck.balance import balance_residuals, load_boundary_data, nogo_su2, one_instanton_boundary_data
from ym_neck.config.run_config import RunConfig
from ym_neck.core.errors import InputError
from ym_neck.fields import (
    NeckGeometry,
    bubble_connection,
    curvature,
    decay_profile,
    extract_neck_modes,
    to_cylinder,
)
from ym_neck.geometry.quadrature import build_sphere_grid
from ym_neck.reports.models import (
    BalanceReportPayload,
    IdentityReport,
    NeckReport,
    NoGoReport,
    SolverReport,
)
from ym_neck.reports.writer import Report
from ym_neck.spectral.cylinder_solver import DecaySweep
from ym_neck.spectral.mode_ode import ModeSignal, solve_mode_ode
from ym_neck.spectral.signals_io import (
    EXAMPLE_SIGNAL_FILE,
    example_signals,
    read_signals,
    truncate_signal,
    write_solutions,
)
from ym_neck.verification import CheckContext, load_suites, run_verification

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_OBSTRUCTED = 2
EXIT_RESOLUTION = 3
EXIT_INPUT = 4

# Relative continuous ODE defect; the compact scheme is fourth order in the sample spacing
SOLVER_TOLERANCE = 1e-6


@dataclass
class CommandOutcome:
    """A report and the exit code it maps to."""

    report: Report
    exit_code: int


def cmd_verify_identities(config: RunConfig) -> CommandOutcome:
    """Run every enabled identity suite on the configured sphere grid."""
    config.validate()
    grid = build_sphere_grid(config.grid_resolution, config.grid_layout, config.seed)
    suites = load_suites()
    context = CheckContext(grid=grid, seed=config.seed, lam=config.lam)
    LOGGER.info("Running %d identity suites on %d nodes", len(suites), grid.size)
    result = run_verification(context, suites)
    report = IdentityReport(
        results=result.results,
        overall_status=result.overall_status,
        grid_resolution=config.grid_resolution,
        grid_layout=config.grid_layout,
        nodes=grid.size,
    )
    LOGGER.info("Identity suites: %s (max residual %.3e)", result.overall_status.value, result.max_residual)
    return CommandOutcome(report, EXIT_OK if result.all_passed else EXIT_FAILED)


def cmd_instanton_neck(config: RunConfig) -> CommandOutcome:
    """Expand a bubble of scale lambda over its neck and fit the curvature envelope."""
    config.validate()
    config.check_neck()
    geom = NeckGeometry(lam=config.lam, delta=config.neck_delta)
    sphere = build_sphere_grid(config.grid_resolution, config.grid_layout, config.seed)
    connection = bubble_connection(config.lam, config.orientation)
    field = to_cylinder(connection, geom, sphere=sphere, slices=config.slices)
    expansion = extract_neck_modes(field, geom)
    decay = decay_profile(curvature(field), geom)
    LOGGER.info(
        "Neck of %s over [%.4g, %.4g]: C1=%.6g C2=%.6g",
        connection.label,
        geom.t_min,
        geom.t_max,
        decay.c1,
        decay.c2,
    )
    report = NeckReport(
        lam=config.lam,
        delta=geom.delta,
        orientation=config.orientation,
        expansion=expansion,
        decay=decay,
        trace_scale=connection.algebra.trace_scale,
    )
    return CommandOutcome(report, EXIT_OK)


def _require_input(config: RunConfig, what: str) -> Path:
    if config.input_path is None:
        raise InputError(f"{config.command} needs an input {what} (--input)")
    return config.input_path


def cmd_balance(config: RunConfig) -> CommandOutcome:
    """The seven balancing residuals of a boundary-data file."""
    path = _require_input(config, "boundary-data JSON file")
    data = load_boundary_data(path)
    report = balance_residuals(data, tolerance=config.tol)
    LOGGER.info("Balance of %s: max normalized residual %.3e", path, report.max_residual)
    return CommandOutcome(
        BalanceReportPayload(report=report, source=str(path)),
        EXIT_OK if report.passed else EXIT_OBSTRUCTED,
    )


def cmd_nogo(config: RunConfig) -> CommandOutcome:
    """The no-go certificate for the built-in one-instanton pairing and an optional file."""
    certificates = {"built-in": nogo_su2(one_instanton_boundary_data(), tol=config.tol)}
    if config.input_path is not None:
        certificates[str(config.input_path)] = nogo_su2(load_boundary_data(config.input_path), tol=config.tol)
    report = NoGoReport(certificates=certificates)
    return CommandOutcome(report, EXIT_OK if report.passed else EXIT_OBSTRUCTED)


def _solve(signals: List[ModeSignal], alpha: float, M: float):
    return [solve_mode_ode(signal.rate, signal, alpha, M) for signal in signals]


def _sweep(config: RunConfig, signals: List[ModeSignal]) -> Dict[str, DecaySweep]:
    constants: Dict[str, Dict[float, float]] = {s.mode: {} for s in signals}
    for M in config.m_values:
        if config.input_path is None:
            window = example_signals(M, config.points_per_unit, config.alpha)
        else:
            try:
                window = [truncate_signal(s, M) for s in signals]
            except InputError as e:
                LOGGER.warning("Skipping M=%g in the sweep: %s", M, e)
                continue
        for solution in _solve(window, config.alpha, M):
            constants[solution.mode][float(M)] = solution.decay_constant
    return {mode: DecaySweep(constants=values) for mode, values in constants.items() if values}


def cmd_solve_cylinder(config: RunConfig) -> CommandOutcome:
    """Solve the mode ODEs of a signal file (or the bundled example) and measure C(M)."""
    config.check_alpha()
    if config.input_path is not None:
        signals = read_signals(config.input_path)
        source = str(config.input_path)
    else:
        signals = read_signals(EXAMPLE_SIGNAL_FILE)
        source = "example"
    M = max(s.half_length for s in signals)
    solutions = _solve(signals, config.alpha, M)
    sweeps = _sweep(config, signals) if config.m_sweep else {}

    if config.output_path is not None:
        path = config.output_path.with_name(config.output_path.stem + "_solution.csv")
        write_solutions(path, solutions)
        LOGGER.info("Wrote mode solutions to %s", path)

    report = SolverReport(
        alpha=config.alpha,
        half_length=M,
        solutions=solutions,
        source=source,
        tolerance=SOLVER_TOLERANCE,
        sweeps=sweeps,
    )
    LOGGER.info("Cylinder solve: C=%.6g residual=%.3e", report.decay_constant, report.residual)
    return CommandOutcome(report, EXIT_OK if report.passed else EXIT_FAILED)


COMMANDS = {
    "verify-identities": cmd_verify_identities,
    "instanton-neck": cmd_instanton_neck,
    "balance": cmd_balance,
    "nogo": cmd_nogo,
    "solve-cylinder": cmd_solve_cylinder,
}
