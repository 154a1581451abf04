"""Run configuration for the batch commands.

Values are layered, later sources winning:

1. packaged ``defaults/run_defaults.json``
2. the ``run`` section of ``~/.config/ym-neck/config.json``
3. an explicit ``--config`` file (JSON, or YAML by suffix)
4. ``YMNECK_*`` environment variables (a ``.env`` file is honoured)
5. command-line flags
"""

from __future__ import annotations

import json
import logging
import math
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Callable, Dict, Mapping, Optional, Tuple

import yaml
from dotenv import load_dotenv

from ym_neck.core.errors import InputError, ResolutionError
from . import settings_manager

LOGGER = logging.getLogger(__name__)

DEFAULTS_FILE = Path(__file__).parent / "defaults" / "run_defaults.json"

ENV_PREFIX = "YMNECK_"

# Environment variable suffix -> RunConfig field
ENV_KEYS = {
    "LAMBDA": "lam",
    "DELTA": "delta",
    "ALPHA": "alpha",
    "GRID": "grid_resolution",
    "LAYOUT": "grid_layout",
    "TOL": "tol",
    "FORMAT": "report_format",
    "ALGEBRA": "algebra",
    "SEED": "seed",
}


def _optional_float(value: Any) -> Optional[float]:
    return None if value is None or value == "" else float(value)


def _optional_path(value: Any) -> Optional[Path]:
    return None if value in (None, "") else Path(value)


def _float_tuple(value: Any) -> Tuple[float, ...]:
    if isinstance(value, str):
        value = [v for v in value.replace(",", " ").split() if v]
    return tuple(float(v) for v in value)


_CASTS: Dict[str, Callable[[Any], Any]] = {
    "command": str,
    "grid_resolution": int,
    "grid_layout": str,
    "seed": int,
    "lam": float,
    "delta": _optional_float,
    "alpha": float,
    "alpha1": float,
    "tol": float,
    "quad_tol": float,
    "input_path": _optional_path,
    "output_path": _optional_path,
    "report_format": str,
    "orientation": str,
    "algebra": str,
    "half_length": float,
    "points_per_unit": int,
    "slices": int,
    "m_values": _float_tuple,
    "m_sweep": bool,
}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved configuration for one command invocation."""

    command: str = "verify-identities"
    grid_resolution: int = 8
    grid_layout: str = "gauss"
    seed: int = 0
    lam: float = 1e-3
    delta: Optional[float] = None
    alpha: float = 1.9
    alpha1: float = 2.8
    tol: float = 1e-9
    quad_tol: float = 1e-7
    input_path: Optional[Path] = None
    output_path: Optional[Path] = None
    report_format: str = "json"
    orientation: str = "asd"
    algebra: str = "su2"
    half_length: float = 5.0
    points_per_unit: int = 512
    slices: int = 41
    m_values: Tuple[float, ...] = (5.0, 10.0, 20.0)
    m_sweep: bool = False

    @property
    def neck_delta(self) -> float:
        """The neck cutoff; defaults to lam**(1/4) so the neck is never empty."""
        if self.delta is not None:
            return self.delta
        return self.lam**0.25

    def check_neck(self) -> None:
        """Raise ``InputError`` unless 0 < lam < delta**2 and delta < 1."""
        delta = self.neck_delta
        if not (self.lam > 0 and 0 < delta < 1):
            raise InputError(f"Invalid scales: lambda={self.lam}, delta={delta}")
        if self.lam >= delta**2:
            raise InputError(
                f"No neck: lambda={self.lam} must be smaller than delta^2={delta**2}"
            )

    def check_alpha(self) -> None:
        """Raise unless alpha is positive and avoids every tabulated mode rate."""
        from ym_neck.spectral.gaps import SpectralGaps

        SpectralGaps(alpha1=self.alpha1).check_alpha(self.alpha)

    def check_grid(self) -> None:
        """Raise ``ResolutionError`` when the sphere grid is below threshold."""
        from ym_neck.geometry.quadrature import QUADRATURE_MIN_RESOLUTION

        if self.grid_resolution < QUADRATURE_MIN_RESOLUTION:
            raise ResolutionError(
                f"quadrature below threshold: grid resolution {self.grid_resolution} "
                f"< {QUADRATURE_MIN_RESOLUTION}"
            )
        if not settings_manager.validate_layout(self.grid_layout):
            raise InputError(f"Unknown grid layout: {self.grid_layout}")

    def validate(self) -> "RunConfig":
        """Run the checks every command relies on and return ``self``."""
        if not settings_manager.validate_format(self.report_format):
            raise InputError(f"Unknown report format: {self.report_format}")
        if self.orientation not in ("sd", "asd"):
            raise InputError(f"Orientation must be 'sd' or 'asd', got {self.orientation}")
        if not (math.isfinite(self.tol) and self.tol > 0):
            raise InputError(f"Tolerance must be positive, got {self.tol}")
        self.check_grid()
        return self

    def with_overrides(self, **overrides: Any) -> "RunConfig":
        """Return a copy with the non-``None`` overrides applied."""
        clean = _cast_values({k: v for k, v in overrides.items() if v is not None}, "flags")
        return replace(self, **clean)


def _cast_values(data: Mapping[str, Any], source: str) -> Dict[str, Any]:
    """Cast known keys, dropping (and logging) unknown or invalid ones."""
    result: Dict[str, Any] = {}
    for key, value in data.items():
        cast = _CASTS.get(key)
        if cast is None:
            LOGGER.warning("Ignoring unknown run setting '%s' from %s", key, source)
            continue
        try:
            result[key] = cast(value)
        except (TypeError, ValueError):
            LOGGER.warning("Invalid value %r for '%s' from %s", value, key, source)
    return result


def load_config_file(path: Path) -> Dict[str, Any]:
    """Read a JSON or YAML run configuration file.

    Raises:
        InputError: if the file is missing or cannot be parsed
    """
    try:
        content = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"Cannot read config file {path}: {e}") from e
    try:
        if Path(path).suffix.lower() in (".yaml", ".yml"):
            data = yaml.safe_load(content) or {}
        else:
            data = json.loads(content) if content.strip() else {}
    except (yaml.YAMLError, json.JSONDecodeError) as e:
        raise InputError(f"Malformed config file {path}: {e}") from e
    if not isinstance(data, dict):
        raise InputError(f"Config file {path} must contain a mapping")
    return data


def _environment_values() -> Dict[str, Any]:
    load_dotenv()
    values: Dict[str, Any] = {}
    for suffix, key in ENV_KEYS.items():
        raw = os.environ.get(ENV_PREFIX + suffix)
        if raw is not None and raw != "":
            values[key] = raw
    return values


def load_run_config(
    command: str,
    overrides: Optional[Mapping[str, Any]] = None,
    config_file: Optional[Path] = None,
) -> RunConfig:
    """Resolve the layered configuration for ``command``."""
    names = {f.name for f in fields(RunConfig)}
    merged: Dict[str, Any] = {}

    defaults = {}
    if DEFAULTS_FILE.exists():
        try:
            defaults = json.loads(DEFAULTS_FILE.read_text(encoding="utf-8"))
        except json.JSONDecodeError:
            LOGGER.debug("Packaged run defaults unreadable: %s", DEFAULTS_FILE, exc_info=True)
    layers = [
        ("defaults", defaults),
        ("user settings", settings_manager.get_run_settings()),
    ]
    if config_file is not None:
        layers.append((str(config_file), load_config_file(config_file)))
    layers.append(("environment", _environment_values()))
    layers.append(("flags", {k: v for k, v in (overrides or {}).items() if v is not None}))

    for source, data in layers:
        merged.update(_cast_values(data, source))
        LOGGER.debug("Applied %d run settings from %s", len(data), source)

    merged["command"] = command
    return RunConfig(**{k: v for k, v in merged.items() if k in names})
