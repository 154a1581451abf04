"""CSV ingestion of mode signals and export of mode solutions.

A signal file has a ``t`` column followed by one column per mode. Columns
are named after the mode tables (``1``, ``omega1``, ``psi2``, ``phi+1``,
``phi-3``...), which fixes the eigenvalue, or ``name@eigenvalue`` for any
other mode.
"""

from __future__ import annotations

import csv
import io
import logging
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ym_neck.core.errors import InputError
from ym_neck.geometry.modes import ONE_FORM_MODES, SCALAR_MODES
from .mode_ode import ModeSignal, ModeSolution

LOGGER = logging.getLogger(__name__)

TABLE_EIGENVALUES: Dict[str, float] = {m.name: m.eigenvalue for m in SCALAR_MODES + ONE_FORM_MODES}


def parse_column(name: str) -> Tuple[str, float]:
    """``(mode name, eigenvalue)`` for a signal column header."""
    name = name.strip()
    if "@" in name:
        mode, _, value = name.partition("@")
        try:
            eigenvalue = float(value)
        except ValueError as e:
            raise InputError(f"Bad eigenvalue in column {name!r}") from e
        return mode.strip() or name, eigenvalue
    if name in TABLE_EIGENVALUES:
        return name, TABLE_EIGENVALUES[name]
    raise InputError(f"Unknown mode column {name!r}; use a table mode or name@eigenvalue")


def parse_signals(text: str, source: str = "<signal>") -> List[ModeSignal]:
    """Parse CSV text into one ``ModeSignal`` per mode column.

    Raises:
        InputError: for a missing ``t`` column, non-numeric cells or no data
    """
    reader = csv.DictReader(io.StringIO(text))
    fields = [f.strip() for f in (reader.fieldnames or [])]
    if not fields or fields[0] != "t":
        raise InputError(f"{source}: the first column must be 't'")
    if len(fields) < 2:
        raise InputError(f"{source}: no mode columns")
    modes = [parse_column(f) for f in fields[1:]]
    rows = []
    for line, row in enumerate(reader, start=2):
        try:
            rows.append([float(row[key]) for key in reader.fieldnames])
        except (TypeError, ValueError) as e:
            raise InputError(f"{source}:{line}: non-numeric value") from e
    if not rows:
        raise InputError(f"{source}: empty signal")
    data = np.array(rows)
    LOGGER.debug("Read %d samples of %d modes from %s", data.shape[0], len(modes), source)
    return [
        ModeSignal(t=data[:, 0], values=data[:, k + 1], eigenvalue=eigenvalue, mode=mode)
        for k, (mode, eigenvalue) in enumerate(modes)
    ]


def read_signals(path: Path) -> List[ModeSignal]:
    """Read a signal CSV with :func:`parse_signals`.

    Raises:
        InputError: if the file cannot be read or is malformed
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"Cannot read signal file {path}: {e}") from e
    return parse_signals(text, source=str(path))


def format_solutions(solutions: Sequence[ModeSolution]) -> str:
    """CSV with ``t`` and one column per solved mode (17 significant digits)."""
    if not solutions:
        return "t\n"
    t = solutions[0].t
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["t"] + [s.mode for s in solutions])
    for k, tk in enumerate(t):
        writer.writerow([f"{tk:.17g}"] + [f"{float(np.ravel(s.values[k])[0]):.17g}" for s in solutions])
    return buffer.getvalue()


def write_solutions(path: Path, solutions: Sequence[ModeSolution]) -> None:
    """Write :func:`format_solutions` output to ``path``."""
    Path(path).write_text(format_solutions(solutions), encoding="utf-8")


EXAMPLE_SIGNAL_FILE = Path(__file__).resolve().parent.parent / "data" / "example_signal.csv"
EXAMPLE_MODES = ("1", "omega1", "phi+1")


def example_signals(half_length: float, points_per_unit: int, alpha: float) -> List[ModeSignal]:
    """Forcing ``cosh(alpha t) / cosh(alpha M)`` on a zero-rate, a sub-alpha and a super-alpha mode.

    The forcing has unit weighted norm for every ``M``, so ``C(M)`` should
    settle as ``M`` grows.
    """
    def forcing(t):
        return np.exp(alpha * (np.abs(t) - half_length)) * (1.0 + np.exp(-2.0 * alpha * np.abs(t))) / (
            1.0 + np.exp(-2.0 * alpha * half_length)
        )

    return [
        ModeSignal.uniform(half_length, points_per_unit, forcing, eigenvalue=TABLE_EIGENVALUES[mode], mode=mode)
        for mode in EXAMPLE_MODES
    ]


def truncate_signal(signal: ModeSignal, half_length: float) -> ModeSignal:
    """The part of ``signal`` with ``|t| <= half_length``.

    Raises:
        InputError: if the signal does not reach ``half_length`` on both sides
    """
    pad = 1e-9 * max(1.0, half_length)
    if signal.t[0] > -half_length + pad or signal.t[-1] < half_length - pad:
        raise InputError(
            f"Signal {signal.mode} covers [{signal.t[0]:g}, {signal.t[-1]:g}], not [-{half_length:g}, {half_length:g}]"
        )
    keep = np.abs(signal.t) <= half_length + pad
    return ModeSignal(
        t=signal.t[keep],
        values=signal.values[keep],
        eigenvalue=signal.eigenvalue,
        mode=signal.mode,
        algebra=signal.algebra,
    )
