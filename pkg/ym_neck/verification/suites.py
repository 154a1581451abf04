"""Loading identity-suite definitions from YAML."""

import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from ym_neck.core.config_paths import ConfigPaths

LOGGER = logging.getLogger(__name__)

BUILTIN_SUITES_DIR = Path(__file__).parent / "definitions"


@dataclass(frozen=True)
class SuiteDefinition:
    """One identity check to run."""

    name: str  # "<category>.<suite>"
    checker_class: str  # Class name of the identity check
    tolerance: float = 1e-10
    timeout: float = 30.0  # Timeout in seconds
    required: bool = True  # If True, a failure fails the run
    enabled: bool = True
    config: Dict[str, Any] = field(default_factory=dict)

    def check_config(self) -> Dict[str, Any]:
        """Config handed to the check instance."""
        return {**self.config, "tolerance": self.tolerance, "required": self.required}


def _merge(base: Optional[SuiteDefinition], name: str, entry: Dict[str, Any]) -> SuiteDefinition:
    if base is None:
        return SuiteDefinition(
            name=name,
            checker_class=str(entry["checker_class"]),
            tolerance=float(entry.get("tolerance", 1e-10)),
            timeout=float(entry.get("timeout", 30.0)),
            required=bool(entry.get("required", True)),
            enabled=bool(entry.get("enabled", True)),
            config=dict(entry.get("config") or {}),
        )
    return replace(
        base,
        checker_class=str(entry.get("checker_class", base.checker_class)),
        tolerance=float(entry.get("tolerance", base.tolerance)),
        timeout=float(entry.get("timeout", base.timeout)),
        required=bool(entry.get("required", base.required)),
        enabled=bool(entry.get("enabled", base.enabled)),
        config={**base.config, **(entry.get("config") or {})},
    )


def parse_suite_data(
    data: Dict[str, Any], suites: Optional[Dict[str, SuiteDefinition]] = None
) -> Dict[str, SuiteDefinition]:
    """Fold one definition file (category -> name -> settings) into ``suites``."""
    suites = dict(suites or {})
    for category, entries in data.items():
        if not isinstance(entries, dict):
            continue
        for suite_name, entry in entries.items():
            if not isinstance(entry, dict):
                continue
            name = f"{category}.{suite_name}"
            suites[name] = _merge(suites.get(name), name, entry)
    return suites


def load_suites(user_dir: Optional[Path] = None) -> List[SuiteDefinition]:
    """Built-in suites, then user overrides, in definition order.

    Args:
        user_dir: Directory of user suite files; defaults to
            ``~/.config/ym-neck/suites``

    Returns:
        Enabled and disabled suites alike
    """
    suites: Dict[str, SuiteDefinition] = {}

    def load_directory(directory: Path, source: str) -> None:
        nonlocal suites
        if not directory.exists():
            return
        for suite_file in sorted(directory.glob("*.yaml")):
            try:
                with open(suite_file, "r", encoding="utf-8") as f:
                    data = yaml.safe_load(f)
                if data:
                    suites = parse_suite_data(data, suites)
            except (OSError, yaml.YAMLError, KeyError, TypeError, ValueError) as e:
                LOGGER.warning("Error loading %s suite file %s: %s", source, suite_file, e)

    load_directory(BUILTIN_SUITES_DIR, "built-in")
    load_directory(user_dir if user_dir is not None else ConfigPaths.get_suites_dir(), "user")
    LOGGER.debug("Loaded %d identity suites", len(suites))
    return list(suites.values())
