"""Tests for signal CSV parsing, solution export and the bundled example."""

import numpy as np
import pytest

from ym_neck.core.errors import InputError
from ym_neck.spectral.mode_ode import solve_mode_ode
from ym_neck.spectral.signals_io import (
    EXAMPLE_MODES,
    EXAMPLE_SIGNAL_FILE,
    example_signals,
    format_solutions,
    parse_column,
    parse_signals,
    read_signals,
    truncate_signal,
    write_solutions,
)

SIGNAL_TEXT = "t,1,phi+1,custom@2.5\n" + "".join(
    f"{t},{t * t},{1.0},{-t}\n" for t in np.linspace(-1.0, 1.0, 9)
)


class TestParseColumn:
    """Test column headers."""

    def test_table_modes(self):
        """Test table names carry their eigenvalues."""
        assert parse_column("1") == ("1", 0.0)
        assert parse_column("omega3") == ("omega3", 3.0)
        assert parse_column(" phi-2 ") == ("phi-2", 4.0)

    def test_explicit_eigenvalue(self):
        """Test name@eigenvalue columns."""
        assert parse_column("custom@2.5") == ("custom", 2.5)

    def test_bad_columns(self):
        """Test unknown names and unparsable eigenvalues."""
        with pytest.raises(InputError, match="Unknown mode"):
            parse_column("phi+7")
        with pytest.raises(InputError, match="Bad eigenvalue"):
            parse_column("custom@fast")


class TestParseSignals:
    """Test CSV ingestion."""

    def test_columns_become_signals(self):
        """Test one signal per mode column."""
        signals = parse_signals(SIGNAL_TEXT)
        assert [s.mode for s in signals] == ["1", "phi+1", "custom"]
        assert [s.eigenvalue for s in signals] == [0.0, 4.0, 2.5]
        assert np.allclose(signals[0].values, signals[0].t**2)

    def test_first_column_must_be_t(self):
        """Test the time column is required first."""
        with pytest.raises(InputError, match="'t'"):
            parse_signals("x,1\n0,1\n")

    def test_no_modes(self):
        """Test a bare time column is refused."""
        with pytest.raises(InputError, match="no mode columns"):
            parse_signals("t\n0\n")

    def test_non_numeric(self):
        """Test non-numeric cells report their line."""
        with pytest.raises(InputError, match=":3: non-numeric"):
            parse_signals("t,1\n0,1\n1,abc\n")

    def test_empty(self):
        """Test a header without rows."""
        with pytest.raises(InputError, match="empty signal"):
            parse_signals("t,1\n")

    def test_missing_file(self, tmp_path):
        """Test unreadable files are input errors."""
        with pytest.raises(InputError, match="Cannot read"):
            read_signals(tmp_path / "absent.csv")


class TestSolutionExport:
    """Test the solution CSV."""

    def test_write_solutions(self, tmp_path):
        """Test header and full-precision cells."""
        signals = parse_signals(SIGNAL_TEXT)
        solutions = [solve_mode_ode(s.rate, s, alpha=1.9) for s in signals]
        path = tmp_path / "run_solution.csv"
        write_solutions(path, solutions)
        lines = path.read_text().splitlines()
        assert lines[0] == "t,1,phi+1,custom"
        assert len(lines) == 10
        first = [float(cell) for cell in lines[1].split(",")]
        assert first[0] == -1.0
        assert first[1] == solutions[0].values[0]

    def test_no_solutions(self):
        """Test the empty export is a bare header."""
        assert format_solutions([]) == "t\n"


class TestExampleSignal:
    """Test the bundled example and its regeneration."""

    def test_bundled_file(self):
        """Test the example covers [-5, 5] with the three example modes."""
        signals = read_signals(EXAMPLE_SIGNAL_FILE)
        assert tuple(s.mode for s in signals) == EXAMPLE_MODES
        assert signals[0].t.size == 641
        assert signals[0].half_length == pytest.approx(5.0)

    def test_matches_generator(self):
        """Test the bundled samples are the generator at alpha 1.9."""
        bundled = read_signals(EXAMPLE_SIGNAL_FILE)
        generated = example_signals(5.0, 64, 1.9)
        for a, b in zip(bundled, generated):
            assert np.allclose(a.t, b.t)
            assert np.allclose(a.values, b.values, rtol=1e-12)

    def test_unit_at_ends(self):
        """Test the forcing equals one at t = +-M."""
        for M in (5.0, 10.0):
            signal = example_signals(M, 8, 1.9)[0]
            assert signal.values[0] == pytest.approx(1.0)
            assert signal.values[-1] == pytest.approx(1.0)

    def test_truncate(self):
        """Test truncation keeps |t| <= M and refuses to extend."""
        signal = example_signals(5.0, 8, 1.9)[1]
        short = truncate_signal(signal, 2.0)
        assert short.t[0] == pytest.approx(-2.0)
        assert short.t[-1] == pytest.approx(2.0)
        assert short.eigenvalue == signal.eigenvalue
        with pytest.raises(InputError, match="covers"):
            truncate_signal(signal, 6.0)
