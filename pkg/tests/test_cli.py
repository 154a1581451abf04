"""Tests for the ym-neck command line."""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

import ym_neck
from ym_neck.__main__ import main

DATA = Path(ym_neck.__file__).parent / "data"


@pytest.fixture
def runner():
    return CliRunner()


def run_json(runner, tmp_path, *args):
    """Run a subcommand writing its JSON report to a file; return (result, document)."""
    out = tmp_path / "report.json"
    result = runner.invoke(main, [*args, "--out", str(out)])
    document = json.loads(out.read_text()) if out.exists() else None
    return result, document


class TestVerifyIdentities:
    """Test the identity suites command."""

    def test_all_pass(self, runner, tmp_path):
        """Test every identity passes on a Gauss grid."""
        result, document = run_json(runner, tmp_path, "verify-identities", "--grid", "6")
        assert result.exit_code == 0, result.output
        assert document["passed"] is True
        assert document["grid"]["layout"] == "gauss"
        assert all(r["status"] == "passed" for r in document["identities"])

    def test_coarse_grid(self, runner):
        """Test a grid below the quadrature threshold exits 3."""
        result = runner.invoke(main, ["verify-identities", "--grid", "3"])
        assert result.exit_code == 3
        assert "quadrature below threshold" in result.output

    def test_csv_one_row_per_identity(self, runner, tmp_path):
        """Test the CSV report has a header and one row per identity."""
        _, document = run_json(runner, tmp_path, "verify-identities", "--grid", "6")
        out = tmp_path / "report.csv"
        result = runner.invoke(main, ["verify-identities", "--grid", "6", "--format", "csv", "--out", str(out)])
        assert result.exit_code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "name,status,max_residual,tolerance"
        assert len(lines) == len(document["identities"]) + 1

    def test_montecarlo_skips_exact_integrals(self, runner, tmp_path):
        """Test the Monte Carlo layout skips checks needing exact quadrature."""
        result, document = run_json(
            runner, tmp_path, "verify-identities", "--grid", "5", "--layout", "montecarlo", "--seed", "7"
        )
        statuses = {r["status"] for r in document["identities"]}
        assert "skipped" in statuses
        assert result.exit_code in (0, 1)


class TestBalance:
    """Test the balancing residuals command."""

    def test_balanced_file(self, runner, tmp_path):
        """Test same-orientation data balances."""
        result, document = run_json(runner, tmp_path, "balance", "--input", str(DATA / "asd_asd.json"))
        assert result.exit_code == 0
        assert document["balanced"] is True

    def test_obstructed_file(self, runner, tmp_path):
        """Test the one-instanton pairing exits 2 with trace residual 3."""
        result, document = run_json(runner, tmp_path, "balance", "--input", str(DATA / "one_instanton.json"))
        assert result.exit_code == 2
        assert document["residuals"]["trace"]["raw"] == pytest.approx(3.0)

    def test_malformed_file(self, runner, tmp_path):
        """Test unreadable boundary data exits 4."""
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        result = runner.invoke(main, ["balance", "--input", str(path)])
        assert result.exit_code == 4
        assert "Error" in result.output

    def test_missing_input(self, runner):
        """Test balance needs --input."""
        result = runner.invoke(main, ["balance"])
        assert result.exit_code == 4
        assert "--input" in result.output

    def test_text_format_to_stdout(self, runner):
        """Test the text table is printed to stdout."""
        result = runner.invoke(main, ["balance", "--input", str(DATA / "asd_asd.json"), "--format", "text"])
        assert result.exit_code == 0
        assert "P1(2,3)" in result.output
        assert "PASS" in result.output


class TestNoGo:
    """Test the no-go certificate command."""

    def test_builtin_obstructed(self, runner, tmp_path):
        """Test the built-in pairing is obstructed."""
        result, document = run_json(runner, tmp_path, "nogo")
        assert result.exit_code == 2
        assert document["built-in"]["outcome"] == "obstructed"
        assert document["built-in"]["trace"] == pytest.approx(3.0)

    def test_with_input(self, runner, tmp_path):
        """Test an extra file is certified alongside the built-in pairing."""
        path = DATA / "asd_asd.json"
        _, document = run_json(runner, tmp_path, "nogo", "--input", str(path))
        assert set(document) == {"built-in", str(path)}


class TestSolveCylinder:
    """Test the cylinder solver command."""

    def test_bundled_example(self, runner, tmp_path):
        """Test the bundled example solves to scheme precision."""
        result, document = run_json(runner, tmp_path, "solve-cylinder")
        assert result.exit_code == 0, result.output
        assert document["source"] == "example"
        assert document["residual"] < 1e-6
        assert document["M"] == pytest.approx(5.0)
        assert [m["case"] for m in document["modes"]] == ["case1", "case2", "case3"]

    def test_solution_csv(self, runner, tmp_path):
        """Test the mode solutions are written next to the report."""
        run_json(runner, tmp_path, "solve-cylinder")
        lines = (tmp_path / "report_solution.csv").read_text().splitlines()
        assert lines[0] == "t,1,omega1,phi+1"
        assert len(lines) == 642

    def test_resonant_alpha(self, runner):
        """Test alpha = sqrt 3 is rejected as resonant."""
        result = runner.invoke(main, ["solve-cylinder", "--alpha", "1.7320508075688772"])
        assert result.exit_code == 4
        assert "resonance" in result.output

    def test_m_sweep(self, runner, tmp_path):
        """Test the sweep tabulates C(M) for each configured M."""
        result, document = run_json(runner, tmp_path, "solve-cylinder", "--m-sweep")
        assert result.exit_code == 0, result.output
        for mode in ("1", "omega1", "phi+1"):
            assert set(document["C_of_M"][mode]) == {"5", "10", "20"}

    def test_sweep_skips_uncovered_lengths(self, runner, tmp_path, caplog):
        """Test a user signal only sweeps the half-lengths it covers."""
        source = (DATA / "example_signal.csv").read_text()
        path = tmp_path / "signal.csv"
        path.write_text(source)
        result, document = run_json(runner, tmp_path, "solve-cylinder", "--input", str(path), "--m-sweep")
        assert result.exit_code == 0, result.output
        assert set(document["C_of_M"]["omega1"]) == {"5"}

    def test_config_file(self, runner, tmp_path):
        """Test a YAML config file sets alpha."""
        config = tmp_path / "run.yaml"
        config.write_text("alpha: 1.5\n")
        out = tmp_path / "report.json"
        result = runner.invoke(main, ["--config", str(config), "solve-cylinder", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert json.loads(out.read_text())["alpha"] == 1.5


class TestInstantonNeck:
    """Test the instanton neck command."""

    def test_report(self, runner, tmp_path):
        """Test the neck report carries coefficients and the decay fit."""
        result, document = run_json(runner, tmp_path, "instanton-neck", "--grid", "5")
        assert result.exit_code == 0, result.output
        assert document["lambda"] == pytest.approx(1e-3)
        assert document["orientation"] == "asd"
        assert set(document["decay"]) >= {"C1", "C2", "slope_body", "slope_bubble"}

    def test_no_neck(self, runner):
        """Test scales without a neck exit 4."""
        result = runner.invoke(main, ["instanton-neck", "--lambda", "0.5", "--delta", "0.5"])
        assert result.exit_code == 4
        assert "No neck" in result.output


class TestGlobalOptions:
    """Test options shared by every subcommand."""

    def test_debug_reraises(self, runner):
        """Test --debug lets errors propagate."""
        result = runner.invoke(main, ["--debug", "verify-identities", "--grid", "3"])
        assert result.exit_code != 0
        assert result.exception is not None
        assert not isinstance(result.exception, SystemExit)

    def test_version(self, runner):
        """Test --version names the package."""
        result = runner.invoke(main, ["--version"])
        assert result.exit_code == 0
        assert "version" in result.output
