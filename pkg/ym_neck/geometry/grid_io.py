"""Columnar text serialization of sphere grids (``x1 x2 x3 x4 weight``)."""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from ym_neck.core.errors import InputError
from .quadrature import SphereGrid

LOGGER = logging.getLogger(__name__)

HEADER_PREFIX = "# ym-neck sphere grid"


def format_grid(grid: SphereGrid) -> str:
    """Render ``grid`` with 17 significant digits per column."""
    lines = [f"{HEADER_PREFIX} layout={grid.layout} resolution={grid.resolution} nodes={grid.size}"]
    lines.append("# x1 x2 x3 x4 weight")
    for node, weight in zip(grid.nodes, grid.weights):
        lines.append(" ".join(f"{v:.17g}" for v in (*node, weight)))
    return "\n".join(lines) + "\n"


def write_grid(grid: SphereGrid, path: Path) -> None:
    """Write ``grid`` in the columnar format read by :func:`read_grid`."""
    Path(path).write_text(format_grid(grid), encoding="utf-8")
    LOGGER.debug("Wrote %d grid nodes to %s", grid.size, path)


def parse_grid(text: str) -> SphereGrid:
    """Parse the columnar format; comment lines start with ``#``."""
    layout, resolution = "file", 0
    rows = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            if stripped.startswith(HEADER_PREFIX):
                for token in stripped[len(HEADER_PREFIX) :].split():
                    key, _, value = token.partition("=")
                    if key == "layout":
                        layout = value
                    elif key == "resolution" and value.isdigit():
                        resolution = int(value)
            continue
        parts = stripped.split()
        if len(parts) != 5:
            raise InputError(f"Line {number}: expected 5 columns, got {len(parts)}")
        try:
            rows.append([float(p) for p in parts])
        except ValueError as e:
            raise InputError(f"Line {number}: {e}") from e
    if not rows:
        raise InputError("Grid file contains no nodes")
    data = np.array(rows)
    return SphereGrid(nodes=data[:, :4], weights=data[:, 4], layout=layout, resolution=resolution)


def read_grid(path: Path) -> SphereGrid:
    """Load a quadrature grid written by :func:`write_grid`.

    Raises:
        InputError: if the file cannot be read, or a row is not five numbers
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"Cannot read grid file {path}: {e}") from e
    return parse_grid(text)
