"""Tests for report rendering and the report payloads."""

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np
import pytest

from ym_neck.balance import balance_residuals, nogo_su2, one_instanton_boundary_data
from ym_neck.core.errors import InputError
from ym_neck.reports.models import BalanceReportPayload, NoGoReport
from ym_neck.reports.writer import plain, render, write_report


@dataclass
class TableReport:
    """A minimal report for exercising the renderers."""

    data: Dict[str, Any] = field(default_factory=dict)
    table: List[Dict[str, Any]] = field(default_factory=list)
    ok: bool = True
    title: str = "Sample"

    @property
    def passed(self) -> bool:
        return self.ok

    def to_dict(self) -> Dict[str, Any]:
        return self.data

    def rows(self) -> List[Dict[str, Any]]:
        return self.table


class TestPlain:
    """Test conversion to JSON-ready values."""

    def test_numpy_values(self):
        """Test numpy scalars and arrays become Python values."""
        converted = plain({"a": np.float64(0.5), "b": np.arange(3), "c": np.bool_(True), 1: (np.int64(2),)})
        assert converted == {"a": 0.5, "b": [0, 1, 2], "c": True, "1": [2]}

    def test_non_finite(self):
        """Test NaN and infinities become null."""
        assert plain([float("nan"), float("inf"), -np.inf, 1.0]) == [None, None, None, 1.0]


class TestRender:
    """Test the three formats."""

    def test_json_sorted_and_indented(self):
        """Test JSON output sorts keys with two-space indent."""
        text = render(TableReport(data={"b": 1, "a": float("nan")}), "json")
        assert text == '{\n  "a": null,\n  "b": 1\n}\n'

    def test_json_round_trips_floats(self):
        """Test floats survive a JSON round trip bit for bit."""
        value = 0.1 + 0.2
        text = render(TableReport(data={"x": value}), "json")
        assert json.loads(text)["x"] == value

    def test_csv_full_precision(self):
        """Test CSV cells use 17 significant digits."""
        report = TableReport(table=[{"name": "x", "value": 1.0 / 3.0, "flag": True}])
        lines = render(report, "csv").splitlines()
        assert lines[0] == "name,value,flag"
        assert lines[1] == "x,0.33333333333333331,true"

    def test_csv_empty(self):
        """Test a report without rows renders as nothing."""
        assert render(TableReport(), "csv") == ""

    def test_text_table(self):
        """Test the text table rounds to six digits and ends with the verdict."""
        report = TableReport(table=[{"name": "x", "value": 1.0 / 3.0}], ok=False)
        text = render(report, "text")
        assert "0.333333" in text
        assert "0.3333333" not in text
        assert text.rstrip().endswith("FAIL")
        assert render(TableReport(table=[{"name": "x"}]), "text").rstrip().endswith("PASS")

    def test_unknown_format(self):
        """Test unknown formats are input errors."""
        with pytest.raises(InputError, match="Unknown report format"):
            render(TableReport(), "xml")


class TestWriteReport:
    """Test writing reports to disk."""

    def test_writes_file(self, tmp_path):
        """Test the rendered text is written and returned."""
        path = tmp_path / "report.json"
        text = write_report(TableReport(data={"a": 1}), "json", path)
        assert path.read_text() == text

    def test_stdout_mode(self, tmp_path):
        """Test no file is written without a path."""
        text = write_report(TableReport(data={"a": 1}), "json")
        assert json.loads(text) == {"a": 1}
        assert list(tmp_path.iterdir()) == []

    def test_unwritable(self, tmp_path):
        """Test write failures are input errors."""
        with pytest.raises(InputError, match="Cannot write report"):
            write_report(TableReport(), "json", tmp_path / "missing" / "report.json")


class TestPayloads:
    """Test report payloads built from real results."""

    def test_balance_payload(self):
        """Test the balance document lists all seven residuals."""
        payload = BalanceReportPayload(report=balance_residuals(one_instanton_boundary_data()), source="built-in")
        document = json.loads(render(payload, "json"))
        assert document["balanced"] is False
        assert len(document["residuals"]) == 7
        assert document["residuals"]["trace"]["raw"] == pytest.approx(3.0)
        assert len(render(payload, "csv").splitlines()) == 8

    def test_nogo_payload(self):
        """Test the no-go report fails on an obstructed pairing."""
        report = NoGoReport(certificates={"built-in": nogo_su2(one_instanton_boundary_data())})
        assert report.passed is False
        assert report.rows()[0]["eigenvalue_signs"] == "+1 +1 +1"
