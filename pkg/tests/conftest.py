"""Shared fixtures: isolated user config and small sphere grids."""

import pytest

from ym_neck.core.config_paths import ConfigPaths
from ym_neck.geometry.quadrature import build_sphere_grid


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Point ~/.config/ym-neck at a temp dir and drop YMNECK_* variables."""
    base = tmp_path / "ym-neck-config"
    monkeypatch.setattr(ConfigPaths, "BASE_DIR", base)
    monkeypatch.chdir(tmp_path)
    for name in ("LAMBDA", "DELTA", "ALPHA", "GRID", "LAYOUT", "TOL", "FORMAT", "ALGEBRA", "SEED"):
        monkeypatch.delenv(f"YMNECK_{name}", raising=False)
    return base


@pytest.fixture(scope="session")
def sphere_grid():
    """Default-resolution Gauss grid."""
    return build_sphere_grid(8)


@pytest.fixture(scope="session")
def small_grid():
    """Coarse Gauss grid for sampled-field tests."""
    return build_sphere_grid(6)
