"""Tests for the layered run configuration."""

import json
from pathlib import Path

import pytest

from ym_neck.config.run_config import RunConfig, load_config_file, load_run_config
from ym_neck.config.settings_manager import set_settings
from ym_neck.core.errors import InputError, ResolutionError, ResonanceError
from ym_neck.spectral.gaps import DEFAULT_ALPHA1


class TestRunConfig:
    """Test the resolved configuration object."""

    def test_neck_delta_default(self):
        """Test delta defaults to lambda^(1/4)."""
        config = RunConfig(lam=1e-4)
        assert config.neck_delta == pytest.approx(0.1)
        assert RunConfig(lam=1e-4, delta=0.05).neck_delta == 0.05

    def test_check_neck(self):
        """Test the neck needs lambda < delta^2 < 1."""
        RunConfig(lam=1e-4).check_neck()
        with pytest.raises(InputError, match="No neck"):
            RunConfig(lam=1e-2, delta=0.05).check_neck()
        with pytest.raises(InputError, match="Invalid scales"):
            RunConfig(lam=-1.0, delta=0.5).check_neck()

    def test_check_alpha(self):
        """Test resonant alphas are refused."""
        RunConfig(alpha=1.9).check_alpha()
        with pytest.raises(ResonanceError):
            RunConfig(alpha=1.7320508075688772).check_alpha()

    def test_defaults_are_valid(self):
        """Test the bare and packaged defaults pass every check."""
        RunConfig().validate()
        config = load_run_config("solve-cylinder")
        assert config.alpha1 == RunConfig().alpha1 == DEFAULT_ALPHA1
        config.check_alpha()

    def test_check_grid(self):
        """Test coarse grids and unknown layouts."""
        with pytest.raises(ResolutionError, match="quadrature below threshold"):
            RunConfig(grid_resolution=3).check_grid()
        with pytest.raises(InputError, match="layout"):
            RunConfig(grid_layout="lebedev").check_grid()

    @pytest.mark.parametrize(
        "overrides, message",
        [
            ({"report_format": "xml"}, "report format"),
            ({"orientation": "both"}, "Orientation"),
            ({"tol": 0.0}, "Tolerance"),
            ({"tol": float("nan")}, "Tolerance"),
        ],
    )
    def test_validate(self, overrides, message):
        """Test validation of formats, orientations and tolerances."""
        with pytest.raises(InputError, match=message):
            RunConfig(**overrides).validate()

    def test_with_overrides(self):
        """Test None overrides are ignored and values are cast."""
        config = RunConfig().with_overrides(alpha="1.5", grid_resolution=None)
        assert config.alpha == 1.5
        assert config.grid_resolution == 8


class TestLoadConfigFile:
    """Test reading --config files."""

    def test_json(self, tmp_path):
        """Test JSON config files."""
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"alpha": 1.2}))
        assert load_config_file(path) == {"alpha": 1.2}

    def test_yaml(self, tmp_path):
        """Test YAML config files by suffix."""
        path = tmp_path / "run.yaml"
        path.write_text("alpha: 1.2\nm_values: [5, 10]\n")
        assert load_config_file(path) == {"alpha": 1.2, "m_values": [5, 10]}

    def test_empty_yaml(self, tmp_path):
        """Test an empty YAML file is an empty mapping."""
        path = tmp_path / "run.yml"
        path.write_text("")
        assert load_config_file(path) == {}

    def test_malformed(self, tmp_path):
        """Test parse errors are input errors."""
        path = tmp_path / "run.json"
        path.write_text("{alpha")
        with pytest.raises(InputError, match="Malformed"):
            load_config_file(path)

    def test_not_a_mapping(self, tmp_path):
        """Test the top level must be a mapping."""
        path = tmp_path / "run.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(InputError, match="mapping"):
            load_config_file(path)

    def test_missing(self, tmp_path):
        """Test a missing file is an input error."""
        with pytest.raises(InputError, match="Cannot read"):
            load_config_file(tmp_path / "absent.json")


class TestLoadRunConfig:
    """Test the precedence of the configuration layers."""

    def test_packaged_defaults(self):
        """Test the packaged defaults."""
        config = load_run_config("nogo")
        assert config.command == "nogo"
        assert config.grid_resolution == 8
        assert config.alpha == 1.9
        assert config.m_values == (5.0, 10.0, 20.0)
        assert config.delta is None

    def test_user_settings_override_defaults(self):
        """Test the saved run section beats the packaged defaults."""
        set_settings({"alpha": 1.5, "grid_resolution": 10})
        config = load_run_config("solve-cylinder")
        assert config.alpha == 1.5
        assert config.grid_resolution == 10

    def test_config_file_overrides_user_settings(self, tmp_path):
        """Test an explicit config file beats saved settings."""
        set_settings({"alpha": 1.5})
        path = tmp_path / "run.yaml"
        path.write_text("alpha: 1.2\nm_values: '5, 7'\n")
        config = load_run_config("solve-cylinder", config_file=path)
        assert config.alpha == 1.2
        assert config.m_values == (5.0, 7.0)

    def test_environment_overrides_file(self, tmp_path, monkeypatch):
        """Test YMNECK_* variables beat the config file."""
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"alpha": 1.2, "grid_layout": "gauss"}))
        monkeypatch.setenv("YMNECK_ALPHA", "1.1")
        monkeypatch.setenv("YMNECK_LAYOUT", "montecarlo")
        config = load_run_config("solve-cylinder", config_file=path)
        assert config.alpha == 1.1
        assert config.grid_layout == "montecarlo"

    def test_flags_override_environment(self, monkeypatch):
        """Test command-line flags win, and None flags are skipped."""
        monkeypatch.setenv("YMNECK_GRID", "12")
        config = load_run_config(
            "verify-identities",
            overrides={"grid_resolution": 6, "alpha": None, "output_path": "out.json"},
        )
        assert config.grid_resolution == 6
        assert config.alpha == 1.9
        assert config.output_path == Path("out.json")

    def test_unknown_and_invalid_settings(self, caplog):
        """Test unknown keys and uncastable values are dropped with a warning."""
        set_settings({"colour": "blue", "grid_resolution": "many"})
        config = load_run_config("nogo")
        assert config.grid_resolution == 8
        assert "unknown run setting 'colour'" in caplog.text
        assert "Invalid value" in caplog.text
