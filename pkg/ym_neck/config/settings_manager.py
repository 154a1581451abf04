"""Persistent user settings for ym-neck.

Settings Schema (~/.config/ym-neck/config.json):
    {
        "run": {                      # Overrides for config/defaults/run_defaults.json
            "grid_resolution": int,   # Gauss-Legendre nodes in the polar variable
            "grid_layout": str,       # "gauss" or "montecarlo"
            "alpha": float,           # Decay rate for the cylinder solver
            "report_format": str,     # "json", "csv" or "text"
            ...
        }
    }
"""

import json
import logging
from typing import Any, Dict

from ym_neck.core.config_paths import ConfigPaths

LOGGER = logging.getLogger(__name__)

DEFAULT_FORMAT = "json"

VALID_FORMATS = {"json", "csv", "text"}

VALID_LAYOUTS = {"gauss", "montecarlo"}


def load_config_data() -> Dict[str, Any]:
    """Loads configuration data from config.json."""
    config_file = ConfigPaths.get_config_file()
    if not config_file.exists():
        return {}
    try:
        content = config_file.read_text(encoding="utf-8")
        if not content.strip():
            return {}
        data = json.loads(content)
    except (json.JSONDecodeError, IOError) as e:
        LOGGER.warning(
            "Failed to load config file: %s. Using empty configuration.",
            e,
            exc_info=True,
        )
        return {}
    if not isinstance(data, dict):
        LOGGER.warning("Ignoring config file %s: top level is not an object", config_file)
        return {}
    return data


def _save_config_data(data: Dict[str, Any]) -> None:
    """Saves the configuration data to config.json."""
    config_file = ConfigPaths.get_config_file()
    try:
        config_file.parent.mkdir(parents=True, exist_ok=True)
        config_file.write_text(json.dumps(data, indent=4, sort_keys=True), encoding="utf-8")
    except IOError as e:
        LOGGER.error("Failed to save config file: %s", e, exc_info=True)


def get_run_settings() -> Dict[str, Any]:
    """Return the user's saved run overrides (the ``run`` section)."""
    run = load_config_data().get("run", {})
    return run if isinstance(run, dict) else {}


def get_setting(key: str, default: Any = None) -> Any:
    """Retrieve a single run setting from the config file."""
    return get_run_settings().get(key, default)


def set_settings(updates: Dict[str, Any]) -> None:
    """Merge ``updates`` into the saved run section."""
    data = load_config_data()
    run = data.get("run")
    if not isinstance(run, dict):
        run = {}
    run.update(updates)
    data["run"] = run
    _save_config_data(data)


def validate_format(report_format: str) -> bool:
    """Check whether ``report_format`` is a supported report format."""
    return report_format in VALID_FORMATS


def validate_layout(layout: str) -> bool:
    """Check whether ``layout`` names a sphere grid layout."""
    return layout in VALID_LAYOUTS


def get_format_setting() -> str:
    """Saved report format, falling back to ``DEFAULT_FORMAT`` when invalid."""
    report_format = get_setting("report_format", DEFAULT_FORMAT)
    return report_format if validate_format(report_format) else DEFAULT_FORMAT
