"""Tests for identity-suite definitions."""

import yaml

from ym_neck.core.config_paths import ConfigPaths
from ym_neck.verification.suites import SuiteDefinition, load_suites, parse_suite_data


class TestParseSuiteData:
    """Test folding definition files."""

    def test_new_suite(self):
        """Test a new entry gets defaults."""
        suites = parse_suite_data({"demo": {"one": {"checker_class": "MockCheck"}}})
        suite = suites["demo.one"]
        assert suite.checker_class == "MockCheck"
        assert suite.tolerance == 1e-10
        assert suite.timeout == 30.0
        assert suite.required is True
        assert suite.enabled is True

    def test_override_merges(self):
        """Test a later entry overrides only the keys it names."""
        base = parse_suite_data(
            {"demo": {"one": {"checker_class": "MockCheck", "tolerance": 1e-8, "config": {"a": 1, "b": 2}}}}
        )
        merged = parse_suite_data({"demo": {"one": {"enabled": False, "config": {"b": 3}}}}, base)
        suite = merged["demo.one"]
        assert suite.enabled is False
        assert suite.tolerance == 1e-8
        assert suite.config == {"a": 1, "b": 3}

    def test_ignores_malformed_entries(self):
        """Test non-mapping categories and entries are skipped."""
        suites = parse_suite_data({"notes": "text", "demo": {"bad": 3}})
        assert suites == {}

    def test_check_config(self):
        """Test tolerance and required flow into the check config."""
        suite = SuiteDefinition(name="a.b", checker_class="X", tolerance=1e-6, config={"k": 1})
        assert suite.check_config() == {"k": 1, "tolerance": 1e-6, "required": True}


class TestLoadSuites:
    """Test loading built-in and user suites."""

    def test_builtin_suites(self):
        """Test every built-in identity suite loads."""
        names = {suite.name for suite in load_suites()}
        assert {
            "frames.frames",
            "frames.transition_matrix",
            "frames.t_integrals",
            "frames.eigenmodes",
            "forms.cylinder_forms",
            "forms.mod_dt",
            "forms.contraction_table",
            "forms.inversion",
            "calculus.coclosed",
            "calculus.hodge_split",
            "calculus.instanton",
        } <= names

    def test_user_override(self, tmp_path):
        """Test a user file can disable a built-in suite."""
        user_dir = tmp_path / "suites"
        user_dir.mkdir()
        (user_dir / "local.yaml").write_text(
            yaml.safe_dump({"calculus": {"hodge_split": {"enabled": False}}})
        )
        suites = {suite.name: suite for suite in load_suites(user_dir)}
        assert suites["calculus.hodge_split"].enabled is False
        assert suites["calculus.hodge_split"].checker_class == "HodgeSplitCheck"

    def test_default_user_dir(self):
        """Test the default user directory comes from ConfigPaths."""
        user_dir = ConfigPaths.get_suites_dir()
        user_dir.mkdir(parents=True, exist_ok=True)
        (user_dir / "extra.yaml").write_text(
            yaml.safe_dump({"custom": {"mine": {"checker_class": "TableCheck", "tolerance": 1e-9}}})
        )
        suites = {suite.name: suite for suite in load_suites()}
        assert suites["custom.mine"].tolerance == 1e-9

    def test_broken_user_file_is_skipped(self, tmp_path, caplog):
        """Test an unreadable YAML file logs a warning and is skipped."""
        user_dir = tmp_path / "suites"
        user_dir.mkdir()
        (user_dir / "broken.yaml").write_text("calculus: [unclosed")
        suites = load_suites(user_dir)
        assert len(suites) >= 11
        assert "broken.yaml" in caplog.text
