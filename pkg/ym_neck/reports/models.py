"""Report payloads emitted by the commands.

Every report has ``to_dict`` (the JSON document), ``rows`` (one flat record
per line of the CSV and text renderings) and ``passed``.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

import numpy as np

from ym_neck.balance.nogo import NoGoCertificate
from ym_neck.balance.residuals import BalanceReport
from ym_neck.fields.decay import DecayProfile
from ym_neck.fields.modes import NeckExpansion
from ym_neck.spectral.cylinder_solver import DecaySweep
from ym_neck.spectral.mode_ode import ModeSolution
from ym_neck.verification.base_check import CheckResult, CheckStatus


def _norms(coefficients: np.ndarray, trace_scale: float) -> List[float]:
    flat = coefficients.reshape(coefficients.shape[0], -1)
    return [float(v) for v in np.sqrt(np.sum(flat * flat, axis=1) / trace_scale)]


@dataclass
class IdentityReport:
    """Outcome of every identity suite."""

    results: List[CheckResult]
    overall_status: CheckStatus
    grid_resolution: int
    grid_layout: str
    nodes: int
    title: str = "Identity suites"

    @property
    def passed(self) -> bool:
        return not any(r.is_failure for r in self.results)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "grid": {"resolution": self.grid_resolution, "layout": self.grid_layout, "nodes": self.nodes},
            "overall_status": self.overall_status.value,
            "passed": self.passed,
            "identities": [r.to_dict() for r in self.results],
        }

    def rows(self) -> List[Dict[str, Any]]:
        return [
            {
                "name": r.check_name,
                "status": r.status.value,
                "max_residual": r.max_residual,
                "tolerance": r.tolerance,
            }
            for r in self.results
        ]


@dataclass
class NeckReport:
    """Neck coefficients of a bubbling instanton and its curvature envelope."""

    lam: float
    delta: float
    orientation: str
    expansion: NeckExpansion
    decay: DecayProfile
    trace_scale: float = 4.0
    title: str = "Instanton neck"

    @property
    def passed(self) -> bool:
        return True

    def coefficient_norms(self) -> Dict[str, List[float]]:
        return {
            name: _norms(value, self.trace_scale)
            for name, value in sorted(self.expansion.coefficients().items())
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lambda": self.lam,
            "delta": self.delta,
            "orientation": self.orientation,
            "coefficients": {
                name: value.tolist() for name, value in sorted(self.expansion.coefficients().items())
            },
            "coefficient_norms": self.coefficient_norms(),
            "remainder_max": float(np.max(self.expansion.remainder_norm, initial=0.0)),
            "decay": {
                "C1": self.decay.c1,
                "C2": self.decay.c2,
                "slope_body": self.decay.slope_body,
                "slope_bubble": self.decay.slope_bubble,
                "max_relative_residual": self.decay.max_residual,
            },
        }

    def rows(self) -> List[Dict[str, Any]]:
        rows: List[Dict[str, Any]] = []
        for name, norms in self.coefficient_norms().items():
            for index, value in enumerate(norms, start=1):
                rows.append({"quantity": f"|{name}[{index}]|", "value": value})
        decay = self.to_dict()["decay"]
        rows.extend({"quantity": key, "value": value} for key, value in decay.items())
        rows.append({"quantity": "remainder_max", "value": self.to_dict()["remainder_max"]})
        return rows


@dataclass
class BalanceReportPayload:
    """The seven balancing residuals for one boundary-data file."""

    report: BalanceReport
    source: str
    title: str = "Balancing conditions"

    @property
    def passed(self) -> bool:
        return self.report.passed

    def to_dict(self) -> Dict[str, Any]:
        return {
            "source": self.source,
            "balanced": self.report.passed,
            "tolerance": self.report.tolerance,
            "max_residual": self.report.max_residual,
            "residuals": {
                row["residual"]: {"raw": row["raw"], "normalized": row["normalized"]}
                for row in self.report.rows()
            },
        }

    def rows(self) -> List[Dict[str, Any]]:
        return self.report.rows()


@dataclass
class NoGoReport:
    """Certificates for the built-in pairing and, optionally, a user file."""

    certificates: Dict[str, NoGoCertificate]
    title: str = "No-go certificate"

    @property
    def passed(self) -> bool:
        return not any(c.obstructed for c in self.certificates.values())

    def to_dict(self) -> Dict[str, Any]:
        return {name: cert.to_dict() for name, cert in self.certificates.items()}

    def rows(self) -> List[Dict[str, Any]]:
        return [
            {
                "source": name,
                "outcome": cert.outcome.value,
                "trace": cert.trace,
                "eigenvalue_signs": " ".join(f"{s:+d}" for s in cert.eigenvalue_signs),
                "reason": cert.reason,
            }
            for name, cert in self.certificates.items()
        ]


@dataclass
class SolverReport:
    """Mode solutions of the cylinder ODEs and the measured decay constants."""

    alpha: float
    half_length: float
    solutions: Sequence[ModeSolution]
    source: str
    tolerance: float = 1e-6
    title: str = "Cylinder solve"
    sweeps: Dict[str, DecaySweep] = field(default_factory=dict)

    @property
    def residual(self) -> float:
        return max((s.residual for s in self.solutions), default=0.0)

    @property
    def decay_constant(self) -> float:
        return max((s.decay_constant for s in self.solutions), default=0.0)

    @property
    def passed(self) -> bool:
        return self.residual < self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "source": self.source,
            "alpha": self.alpha,
            "M": self.half_length,
            "C_measured": self.decay_constant,
            "residual": self.residual,
            "modes": [s.to_dict() for s in self.solutions],
        }
        if self.sweeps:
            payload["C_of_M"] = {
                mode: {f"{M:g}": C for M, C in sorted(sweep.constants.items())}
                for mode, sweep in self.sweeps.items()
            }
            payload["C_of_M_variation"] = {mode: s.variation for mode, s in self.sweeps.items()}
        return payload

    def rows(self) -> List[Dict[str, Any]]:
        if self.sweeps:
            return [
                {"mode": mode, "M": M, "C_measured": C}
                for mode, sweep in self.sweeps.items()
                for M, C in sorted(sweep.constants.items())
            ]
        return [s.to_dict() for s in self.solutions]
