"""Base classes for identity checks."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np

from ym_neck.config.algebras import AlgebraRegistry, LieAlgebra
from ym_neck.geometry.quadrature import SphereGrid


class CheckStatus(Enum):
    """Status of an identity check."""

    PASSED = "passed"  # Every residual below tolerance
    FAILED = "failed"  # Some residual at or above tolerance
    ERROR = "error"  # Exception or timeout while checking
    SKIPPED = "skipped"  # Not applicable to this grid


@dataclass
class CheckResult:
    """Result of one identity check."""

    check_name: str
    status: CheckStatus
    message: str
    max_residual: float = 0.0
    tolerance: float = 0.0
    details: Dict[str, float] = field(default_factory=dict)
    required: bool = True

    @property
    def is_failure(self) -> bool:
        """Whether this result should fail the run."""
        return self.required and self.status in (CheckStatus.FAILED, CheckStatus.ERROR)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.check_name,
            "status": self.status.value,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "passed": self.status is CheckStatus.PASSED,
            "message": self.message,
            "details": dict(sorted(self.details.items())),
        }


@dataclass(frozen=True, eq=False)
class CheckContext:
    """What every check may sample on: the sphere grid and a seed."""

    grid: SphereGrid
    seed: int = 0
    algebra: LieAlgebra = AlgebraRegistry.SU2
    lam: float = 1e-3

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)

    def sample_nodes(self, count: int) -> np.ndarray:
        """A reproducible subset of at most ``count`` grid nodes."""
        if count >= self.grid.size:
            return self.grid.nodes
        index = np.sort(self.rng().choice(self.grid.size, size=count, replace=False))
        return self.grid.nodes[index]


class IdentityCheck(ABC):
    """Abstract base class for all identity checks."""

    # Checks that integrate polynomials need a grid that integrates them exactly.
    needs_exact_quadrature = False
    default_tolerance = 1e-10

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        """Initialize the check.

        Args:
            config: Configuration for the check (``tolerance`` and check-specific keys)
        """
        self.config = config or {}
        self.name = self.__class__.__name__

    @abstractmethod
    def residuals(self, context: CheckContext) -> Dict[str, float]:
        """Named residuals of the identities this check covers.

        Args:
            context: Grid and seed to sample on

        Returns:
            Mapping of identity name to its max residual
        """
        pass

    def run(self, context: CheckContext) -> CheckResult:
        """Evaluate the residuals and compare them to the tolerance."""
        tolerance = float(self.get_config_value("tolerance", self.default_tolerance))
        required = bool(self.get_config_value("required", True))
        if self.needs_exact_quadrature and context.grid.layout != "gauss":
            return CheckResult(
                check_name=self.name,
                status=CheckStatus.SKIPPED,
                message=f"Needs an exact quadrature layout, grid is {context.grid.layout}",
                tolerance=tolerance,
                required=required,
            )
        details = {key: float(value) for key, value in self.residuals(context).items()}
        worst = max(details.values(), default=0.0)
        failing = sorted(key for key, value in details.items() if not value < tolerance)
        if failing:
            return CheckResult(
                check_name=self.name,
                status=CheckStatus.FAILED,
                message=f"Residual above {tolerance:.1e}: {', '.join(failing)}",
                max_residual=worst,
                tolerance=tolerance,
                details=details,
                required=required,
            )
        return CheckResult(
            check_name=self.name,
            status=CheckStatus.PASSED,
            message=f"{len(details)} identities within {tolerance:.1e}",
            max_residual=worst,
            tolerance=tolerance,
            details=details,
            required=required,
        )

    def get_config_value(self, key: str, default: Any = None) -> Any:
        """Get a configuration value safely."""
        return self.config.get(key, default)
