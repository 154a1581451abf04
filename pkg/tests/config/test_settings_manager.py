import json
from pathlib import Path
from unittest.mock import MagicMock

import pytest

# The module under test
from ym_neck.config.settings_manager import (
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


# Mock the ConfigPaths dependency
@pytest.fixture
def mock_config_file(tmp_path: Path, monkeypatch):
    """Fixture to mock ConfigPaths.get_config_file to return a temp file path."""
    temp_config_file = tmp_path / "config.json"
    mock_config_paths = MagicMock()
    mock_config_paths.get_config_file.return_value = temp_config_file

    monkeypatch.setattr("ym_neck.config.settings_manager.ConfigPaths", mock_config_paths)

    return temp_config_file


def test_load_config_data_missing_file(mock_config_file: Path):
    """Test loading data when the config file does not exist."""
    assert not mock_config_file.exists()
    assert load_config_data() == {}


def test_load_config_data_empty_file(mock_config_file: Path):
    """Test loading data from an empty config file."""
    mock_config_file.write_text("")
    assert load_config_data() == {}


def test_load_config_data_corrupt_json(mock_config_file: Path, caplog):
    """Test loading data from a file with invalid JSON."""
    mock_config_file.write_text("this is not json")
    assert load_config_data() == {}
    assert "Failed to load config file" in caplog.text


def test_load_config_data_not_an_object(mock_config_file: Path):
    """Test a top-level list is ignored."""
    mock_config_file.write_text("[1, 2, 3]")
    assert load_config_data() == {}


def test_set_settings_new_file(mock_config_file: Path):
    """Test saving run settings when the file doesn't exist."""
    set_settings({"grid_resolution": 10, "report_format": "csv"})

    assert mock_config_file.exists()
    content = json.loads(mock_config_file.read_text())
    assert content == {"run": {"grid_resolution": 10, "report_format": "csv"}}


def test_set_settings_existing_file_merge(mock_config_file: Path):
    """Test saving run settings merges with existing data."""
    initial_data = {"run": {"alpha": 1.5, "grid_layout": "gauss"}, "other": {"keep": True}}
    mock_config_file.write_text(json.dumps(initial_data))

    set_settings({"alpha": 1.8, "seed": 3})

    expected_data = {
        "run": {"alpha": 1.8, "grid_layout": "gauss", "seed": 3},
        "other": {"keep": True},
    }
    assert json.loads(mock_config_file.read_text()) == expected_data


def test_set_settings_replaces_broken_run_section(mock_config_file: Path):
    """Test a non-object run section is replaced."""
    mock_config_file.write_text(json.dumps({"run": "oops"}))
    set_settings({"seed": 1})
    assert json.loads(mock_config_file.read_text()) == {"run": {"seed": 1}}


def test_get_setting_exists(mock_config_file: Path):
    """Test retrieving an existing run setting."""
    mock_config_file.write_text(json.dumps({"run": {"grid_resolution": 12}}))
    assert get_setting("grid_resolution") == 12


def test_get_setting_does_not_exist(mock_config_file: Path):
    """Test retrieving a missing run setting."""
    mock_config_file.write_text(json.dumps({"run": {"grid_resolution": 12}}))

    assert get_setting("non_existent", "default") == "default"
    assert get_setting("non_existent") is None


def test_get_run_settings_ignores_non_object(mock_config_file: Path):
    """Test a malformed run section reads as empty."""
    mock_config_file.write_text(json.dumps({"run": [1, 2]}))
    assert get_run_settings() == {}


def test_get_format_setting_saved(mock_config_file: Path):
    """Test retrieving a saved report format."""
    mock_config_file.write_text(json.dumps({"run": {"report_format": "text"}}))
    assert get_format_setting() == "text"


def test_get_format_setting_default(mock_config_file: Path):
    """Test the report format when none is saved."""
    assert get_format_setting() == DEFAULT_FORMAT


def test_get_format_setting_invalid_fallback(mock_config_file: Path):
    """Test that an invalid saved format falls back to the default."""
    mock_config_file.write_text(json.dumps({"run": {"report_format": "xml"}}))
    assert get_format_setting() == DEFAULT_FORMAT


def test_validate_format():
    """Test report format validation."""
    assert validate_format("json") is True
    assert validate_format("csv") is True
    assert validate_format("yaml") is False
    assert validate_format("") is False


def test_validate_layout():
    """Test sphere grid layout validation."""
    assert validate_layout("gauss") is True
    assert validate_layout("montecarlo") is True
    assert validate_layout("lebedev") is False


def test_valid_constants():
    """Test the supported formats and layouts."""
    assert VALID_FORMATS == {"json", "csv", "text"}
    assert VALID_LAYOUTS == {"gauss", "montecarlo"}
