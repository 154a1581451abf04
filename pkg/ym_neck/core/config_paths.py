"""Locations of ym-neck user files.

Everything a user can override lives under ``~/.config/ym-neck/`` (XDG layout):
the persistent ``run`` settings, algebra aliases and identity-suite overrides.
Tests point ``BASE_DIR`` at a temporary directory.
"""

from pathlib import Path


class ConfigPaths:
    """Resolves the files ym-neck reads from the user configuration directory."""

    BASE_DIR = Path.home() / ".config" / "ym-neck"

    @classmethod
    def get_base_dir(cls) -> Path:
        """Return ``~/.config/ym-neck/``, creating it on first use."""
        cls.BASE_DIR.mkdir(parents=True, exist_ok=True)
        return cls.BASE_DIR

    @classmethod
    def get_config_file(cls) -> Path:
        """Return the settings file holding the ``run`` overrides.

        Returns:
            Path to config.json (the file itself may not exist yet)
        """
        return cls.get_base_dir() / "config.json"

    @classmethod
    def get_algebra_aliases_file(cls) -> Path:
        """Return the user alias table for structure algebras.

        Returns:
            Path to algebra_aliases.json
        """
        return cls.get_base_dir() / "algebra_aliases.json"

    @classmethod
    def get_suites_dir(cls) -> Path:
        """Return the directory of YAML suite overrides, creating it if needed."""
        suites_dir = cls.get_base_dir() / "suites"
        suites_dir.mkdir(exist_ok=True)
        return suites_dir
