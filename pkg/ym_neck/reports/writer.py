"""Rendering reports as JSON, CSV or rich text tables."""

import csv
import io
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Protocol

import numpy as np
from rich.console import Console
from rich.table import Table

from ym_neck.core.errors import InputError

LOGGER = logging.getLogger(__name__)

FORMATS = ("json", "csv", "text")


class Report(Protocol):
    """What every command report offers the renderers."""
    title: str

    @property
    def passed(self) -> bool: ...

    def to_dict(self) -> Dict[str, Any]: ...

    def rows(self) -> List[Dict[str, Any]]: ...


def plain(value: Any) -> Any:
    """JSON-ready copy: numpy to Python, non-finite floats to ``None``."""
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return plain(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def _cell(value: Any, digits: int) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.{digits}g}"
    return str(value)


def render_json(report: Report) -> str:
    """Sorted, indented JSON of ``report.to_dict()`` with a trailing newline."""
    # repr of a float is the shortest string that round-trips, never more than 17 digits
    return json.dumps(plain(report.to_dict()), sort_keys=True, indent=2) + "\n"


def render_csv(report: Report) -> str:
    """One CSV row per ``report.rows()`` entry; empty text for an empty report."""
    rows = report.rows()
    buffer = io.StringIO()
    if not rows:
        return ""
    writer = csv.DictWriter(buffer, fieldnames=list(rows[0].keys()), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _cell(value, 17) for key, value in row.items()})
    return buffer.getvalue()


def render_text(report: Report) -> str:
    """Rich table of ``report.rows()`` to six digits, followed by PASS or FAIL."""
    rows = report.rows()
    table = Table(title=report.title)
    columns = list(rows[0].keys()) if rows else []
    for column in columns:
        table.add_column(column, justify="right" if column not in ("name", "mode", "source", "reason") else "left")
    for row in rows:
        table.add_row(*(_cell(row[column], 6) for column in columns))
    buffer = io.StringIO()
    console = Console(file=buffer, width=120, force_terminal=False, color_system=None)
    console.print(table)
    console.print("PASS" if report.passed else "FAIL")
    return buffer.getvalue()


def render(report: Report, fmt: str = "json") -> str:
    """Render ``report`` in ``fmt`` (json, csv or text).

    Raises:
        InputError: for an unknown format
    """
    if fmt == "json":
        return render_json(report)
    if fmt == "csv":
        return render_csv(report)
    if fmt == "text":
        return render_text(report)
    raise InputError(f"Unknown report format: {fmt} (expected one of {FORMATS})")


def write_report(report: Report, fmt: str = "json", path: Optional[Path] = None) -> str:
    """Render and write to ``path``, or return the text for stdout when ``path`` is None.

    Raises:
        InputError: if the file cannot be written
    """
    text = render(report, fmt)
    if path is not None:
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as e:
            raise InputError(f"Cannot write report {path}: {e}") from e
        LOGGER.info("Wrote %s report to %s", fmt, path)
    return text
