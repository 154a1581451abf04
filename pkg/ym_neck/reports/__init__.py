"""Report models and their JSON, CSV and text renderings."""

from .models import BalanceReportPayload, IdentityReport, NeckReport, NoGoReport, SolverReport
from .writer import FORMATS, render, write_report

__all__ = [
    "BalanceReportPayload",
    "IdentityReport",
    "NeckReport",
    "NoGoReport",
    "SolverReport",
    "FORMATS",
    "render",
    "write_report",
]
