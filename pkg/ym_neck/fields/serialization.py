"""JSON documents for sampled gauge fields and neck expansions.

Gauge field schema::

    {
      "lambda": 0.001, "delta": 0.1, "algebra": "su2",
      "grid": {"layout": "gauss", "resolution": 8, "seed": null,
               "nodes": [[x1, x2, x3, x4], ...], "weights": [...]},
      "slices": [{"t": -4.6, "f": [M, ...], "xi": [[M1, M2, M3], ...]}, ...]
    }

with every matrix ``M`` a row-major nested list. A neck expansion lists its
coefficients by name (``a``, ``b``, ``a_tilde``, ...) next to the per-slice
remainder profile.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np

from ym_neck.config.algebras import AlgebraRegistry
from ym_neck.core.errors import InputError
from ym_neck.geometry.quadrature import CylinderGrid, SphereGrid
from .modes import NeckExpansion
from .sampling import GaugeField

LOGGER = logging.getLogger(__name__)


def _grid_to_dict(sphere: SphereGrid) -> Dict[str, Any]:
    return {
        "layout": sphere.layout,
        "resolution": sphere.resolution,
        "seed": sphere.seed,
        "nodes": sphere.nodes.tolist(),
        "weights": sphere.weights.tolist(),
    }


def _grid_from_dict(data: Dict[str, Any]) -> SphereGrid:
    try:
        return SphereGrid(
            nodes=np.asarray(data["nodes"], dtype=float),
            weights=np.asarray(data["weights"], dtype=float),
            layout=data.get("layout", "gauss"),
            resolution=int(data.get("resolution", 0)),
            seed=data.get("seed"),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"Malformed grid entry: {e}") from e


def gauge_field_to_dict(A: GaugeField) -> Dict[str, Any]:
    """Serialize a sampled field to its JSON document.

    The evaluable ``source`` is not written; a reloaded field is sample-only.

    Args:
        A: Field sampled on a cylinder grid

    Returns:
        Mapping with ``lambda``, ``delta``, ``algebra``, ``grid`` and one
        ``slices`` entry per t-slice holding that slice's ``f`` and ``xi``
    """
    slices = [
        {"t": float(t), "f": A.f[k].tolist(), "xi": A.xi[k].tolist()}
        for k, t in enumerate(A.grid.t)
    ]
    return {
        "lambda": A.lam,
        "delta": A.delta,
        "algebra": A.algebra.name,
        "grid": _grid_to_dict(A.grid.sphere),
        "slices": slices,
    }


def gauge_field_from_dict(data: Dict[str, Any]) -> GaugeField:
    """Rebuild a sample-only :class:`GaugeField` from its JSON document.

    Args:
        data: Document written by :func:`gauge_field_to_dict`

    Returns:
        The field, with its algebra resolved from the stored name and matrix size

    Raises:
        InputError: for missing keys or samples that do not match the grid
    """
    if not isinstance(data, dict):
        raise InputError("Gauge field document must be a JSON object")
    try:
        sphere = _grid_from_dict(data["grid"])
        slices = data["slices"]
        t = np.array([float(entry["t"]) for entry in slices])
        f = np.asarray([entry["f"] for entry in slices], dtype=float)
        xi = np.asarray([entry["xi"] for entry in slices], dtype=float)
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"Malformed gauge field document: {e}") from e
    if f.ndim != 4:
        raise InputError(f"f samples must be (slices, nodes, n, n), got {f.shape}")
    algebra = AlgebraRegistry.for_matrices(data.get("algebra"), f.shape[-1])
    return GaugeField(
        f=f,
        xi=xi,
        grid=CylinderGrid(t=t, sphere=sphere),
        algebra=algebra,
        lam=data.get("lambda"),
        delta=data.get("delta"),
    )


def expansion_to_dict(expansion: NeckExpansion) -> Dict[str, Any]:
    """Serialize a neck expansion without its sampled remainder.

    Args:
        expansion: Result of :func:`~ym_neck.fields.modes.extract_neck_modes`

    Returns:
        Mapping with ``lambda``, ``delta``, the named ``coefficients``, the
        slice times ``t`` and the per-slice ``remainder_norm``
    """
    return {
        "lambda": expansion.lam,
        "delta": expansion.delta,
        "coefficients": {name: value.tolist() for name, value in expansion.coefficients().items()},
        "t": expansion.t.tolist(),
        "remainder_norm": expansion.remainder_norm.tolist(),
    }


def expansion_from_dict(data: Dict[str, Any]) -> NeckExpansion:
    """Rebuild a neck expansion from :func:`expansion_to_dict` output.

    Args:
        data: Expansion document; ``delta`` may be absent

    Returns:
        The expansion, with no sampled remainder attached

    Raises:
        InputError: for missing keys, unknown coefficient names or
            non-numeric values
    """
    try:
        coefficients = {
            name: np.asarray(value, dtype=float) for name, value in data["coefficients"].items()
        }
        return NeckExpansion(
            **coefficients,
            lam=float(data["lambda"]),
            delta=float(data.get("delta", float("nan"))),
            t=np.asarray(data["t"], dtype=float),
            remainder_norm=np.asarray(data["remainder_norm"], dtype=float),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"Malformed neck expansion document: {e}") from e


def save_gauge_field(A: GaugeField, path: Path) -> None:
    """Write a sampled field as JSON, creating parent directories.

    Args:
        A: Field to write
        path: Destination file, overwritten if present
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(gauge_field_to_dict(A)))
    LOGGER.debug("Wrote gauge field with %d slices to %s", A.grid.t.size, path)


def load_gauge_field(path: Path, algebra: Optional[str] = None) -> GaugeField:
    """Read a gauge field document.

    Args:
        path: JSON file written by :func:`save_gauge_field`
        algebra: Registry name that overrides the stored algebra

    Returns:
        The sample-only field

    Raises:
        InputError: if the file cannot be read or parsed, or its samples
            do not match its grid
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"Cannot read gauge field {path}: {e}") from e
    if algebra is not None and isinstance(data, dict):
        data = {**data, "algebra": algebra}
    return gauge_field_from_dict(data)
