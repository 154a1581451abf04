"""Boundary data of a bubble neck and its seven balancing residuals."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ym_neck.config.algebras import AlgebraRegistry, LieAlgebra
from ym_neck.core.errors import InputError

LOGGER = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9
SAMPLED_TOLERANCE = 1e-5

BOUNDARY_KEYS = ("FL_plus", "FL_minus", "FR_plus", "FR_minus")

# Report order: pattern P1 = (L+, R-), then P2 = (L-, R+), each over these pairs
PAIRS: Tuple[Tuple[int, int], ...] = ((2, 3), (3, 1), (1, 2))
PATTERNS: Tuple[Tuple[str, str, str], ...] = (
    ("P1", "FL_plus", "FR_minus"),
    ("P2", "FL_minus", "FR_plus"),
)


def _as_triple(name: str, value, algebra: Optional[LieAlgebra]) -> np.ndarray:
    try:
        triple = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as e:
        raise InputError(f"{name} is not a numeric matrix triple: {e}") from e
    if triple.ndim != 3 or triple.shape[0] != 3 or triple.shape[1] != triple.shape[2]:
        raise InputError(f"{name} must hold three square matrices, got shape {triple.shape}")
    if algebra is not None and triple.shape[1:] != algebra.shape:
        raise InputError(
            f"dimension mismatch: {name} has {triple.shape[1]}x{triple.shape[2]} matrices, "
            f"algebra {algebra.name} uses {algebra.matrix_size}x{algebra.matrix_size}"
        )
    return triple


@dataclass(frozen=True, eq=False)
class BoundaryData:
    """The matrices ``F^L_{+-,i}`` (body side) and ``F^R_{+-,i}`` (bubble side)."""

    FL_plus: np.ndarray
    FL_minus: np.ndarray
    FR_plus: np.ndarray
    FR_minus: np.ndarray
    algebra: LieAlgebra = field(default_factory=lambda: AlgebraRegistry.DEFAULT)

    def __post_init__(self):
        for key in BOUNDARY_KEYS:
            object.__setattr__(self, key, _as_triple(key, getattr(self, key), self.algebra))

    @property
    def left_norm(self) -> float:
        return float(np.sqrt(self.algebra.inner(self.FL_plus, self.FL_plus).sum()
                             + self.algebra.inner(self.FL_minus, self.FL_minus).sum()))

    @property
    def right_norm(self) -> float:
        return float(np.sqrt(self.algebra.inner(self.FR_plus, self.FR_plus).sum()
                             + self.algebra.inner(self.FR_minus, self.FR_minus).sum()))

    def conjugated(self, s: np.ndarray) -> "BoundaryData":
        """Replace every matrix ``M`` by ``s M s^t``."""
        s = np.asarray(s, dtype=float)
        return BoundaryData(
            **{key: s @ getattr(self, key) @ s.T for key in BOUNDARY_KEYS},
            algebra=self.algebra,
        )

    def scaled_right(self, factor: float) -> "BoundaryData":
        """Copy with both right-hand (bubble side) triples multiplied by ``factor``."""
        return BoundaryData(
            FL_plus=self.FL_plus,
            FL_minus=self.FL_minus,
            FR_plus=factor * self.FR_plus,
            FR_minus=factor * self.FR_minus,
            algebra=self.algebra,
        )

    @classmethod
    def zeros(cls, algebra: Optional[LieAlgebra] = None) -> "BoundaryData":
        """All four triples zero in ``algebra`` (the default algebra if omitted)."""
        algebra = algebra or AlgebraRegistry.DEFAULT
        empty = np.zeros((3,) + algebra.shape)
        return cls(empty, empty, empty, empty, algebra=algebra)

    @classmethod
    def from_dict(cls, data: Dict[str, Any], algebra: Optional[str] = None) -> "BoundaryData":
        """Parse ``{"algebra": "su2", "FL_plus": [M1, M2, M3], ...}``.

        Raises:
            InputError: for missing keys or matrices of mismatched size
        """
        if not isinstance(data, dict):
            raise InputError("Boundary data must be a JSON object")
        missing = [key for key in BOUNDARY_KEYS if key not in data]
        if missing:
            raise InputError(f"Boundary data is missing {', '.join(missing)}")
        triples = {key: _as_triple(key, data[key], None) for key in BOUNDARY_KEYS}
        sizes = {triple.shape[1] for triple in triples.values()}
        if len(sizes) != 1:
            raise InputError(f"dimension mismatch among boundary matrices: sizes {sorted(sizes)}")
        resolved = AlgebraRegistry.for_matrices(algebra or data.get("algebra"), sizes.pop())
        return cls(**triples, algebra=resolved)

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"algebra": self.algebra.name}
        payload.update({key: getattr(self, key).tolist() for key in BOUNDARY_KEYS})
        return payload


def load_boundary_data(path: Path, algebra: Optional[str] = None) -> BoundaryData:
    """Read a boundary data JSON file.

    Args:
        path: File in the :meth:`BoundaryData.from_dict` layout
        algebra: Registry name that overrides the stored algebra

    Returns:
        The parsed boundary matrices

    Raises:
        InputError: if the file cannot be read or parsed
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"Cannot read boundary data {path}: {e}") from e
    return BoundaryData.from_dict(data, algebra=algebra)


def one_instanton_boundary_data(algebra: Optional[LieAlgebra] = None) -> BoundaryData:
    """ASD limit on the body against an opposite bubble: ``F^L_- = F^R_+ = e_1, e_2, e_3``."""
    algebra = algebra or AlgebraRegistry.DEFAULT
    if algebra.basis is None or algebra.dimension != 3:
        raise InputError(f"One-instanton data needs a three-dimensional algebra, got {algebra.name}")
    empty = np.zeros((3,) + algebra.shape)
    return BoundaryData(
        FL_plus=empty,
        FL_minus=algebra.basis,
        FR_plus=algebra.basis,
        FR_minus=empty,
        algebra=algebra,
    )


@dataclass(frozen=True)
class BalanceReport:
    """Antisymmetry residuals (P1 then P2 over the pairs) and the trace residual."""

    antisym_residuals: Tuple[float, ...]
    antisym_normalized: Tuple[float, ...]
    trace_residual: float
    trace_normalized: float
    tolerance: float
    labels: Tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        worst = max(abs(r) for r in self.antisym_normalized + (self.trace_normalized,))
        return bool(worst <= self.tolerance)

    @property
    def max_residual(self) -> float:
        return max(abs(r) for r in self.antisym_normalized + (self.trace_normalized,))

    def residuals(self) -> Dict[str, float]:
        named = dict(zip(self.labels, self.antisym_residuals))
        named["trace"] = self.trace_residual
        return named

    def rows(self) -> List[Dict[str, Any]]:
        rows = [
            {"residual": label, "raw": raw, "normalized": norm}
            for label, raw, norm in zip(self.labels, self.antisym_residuals, self.antisym_normalized)
        ]
        rows.append({"residual": "trace", "raw": self.trace_residual, "normalized": self.trace_normalized})
        return rows


def balance_residuals(data: BoundaryData, tolerance: float = DEFAULT_TOLERANCE) -> BalanceReport:
    """Evaluate the six antisymmetry residuals and the trace residual exactly.

    For pattern ``(L, R)`` and pair ``(i, j)`` the residual is
    ``<L_i, R_j> - <L_j, R_i>``; the trace residual is
    ``sum_i <F^L_{+,i}, F^R_{-,i}> + <F^L_{-,i}, F^R_{+,i}>``. Normalized
    values divide by ``1 + |F^L| |F^R|``.
    """
    inner = data.algebra.inner
    norm = 1.0 + data.left_norm * data.right_norm
    raw: List[float] = []
    labels: List[str] = []
    for pattern, left_key, right_key in PATTERNS:
        left, right = getattr(data, left_key), getattr(data, right_key)
        for i, j in PAIRS:
            value = inner(left[i - 1], right[j - 1]) - inner(left[j - 1], right[i - 1])
            raw.append(float(value))
            labels.append(f"{pattern}({i},{j})")
    trace = float(
        np.sum(inner(data.FL_plus, data.FR_minus)) + np.sum(inner(data.FL_minus, data.FR_plus))
    )
    report = BalanceReport(
        antisym_residuals=tuple(raw),
        antisym_normalized=tuple(r / norm for r in raw),
        trace_residual=trace,
        trace_normalized=trace / norm,
        tolerance=tolerance,
        labels=tuple(labels),
    )
    LOGGER.debug("Balance residuals: max normalized %.3e (tol %.1e)", report.max_residual, tolerance)
    return report
