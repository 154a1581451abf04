"""Configuration utilities for ym-neck."""

from .algebras import AlgebraRegistry, LieAlgebra
from .run_config import RunConfig, load_config_file, load_run_config
from .settings_manager import (
    DEFAULT_FORMAT,
    VALID_FORMATS,
    VALID_LAYOUTS,
    get_format_setting,
    get_run_settings,
    get_setting,
    load_config_data,
    set_settings,
    validate_format,
    validate_layout,
)

__all__ = [
    # Structure algebras
    "AlgebraRegistry",
    "LieAlgebra",
    # Run configuration
    "RunConfig",
    "load_config_file",
    "load_run_config",
    # Settings management
    "DEFAULT_FORMAT",
    "VALID_FORMATS",
    "VALID_LAYOUTS",
    "get_format_setting",
    "get_run_settings",
    "get_setting",
    "load_config_data",
    "set_settings",
    "validate_format",
    "validate_layout",
]
