"""Certificate that an SU(2) one-instanton bubble cannot balance its body.

When both ``(F^L_{-,i})`` and ``(F^R_{+,i})`` are (multiples of) orthonormal
bases, the pairing ``M_ij = <F^L_{-,i}, F^R_{+,j}>`` is ``c Q`` with ``Q``
orthogonal. Balancing asks for ``M`` symmetric and traceless, but a
symmetric orthogonal 3x3 matrix has eigenvalues ``+-1`` whose sum is odd.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Tuple

import numpy as np
from scipy.linalg import polar

from ym_neck.core.errors import InputError
from .residuals import BoundaryData

LOGGER = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9


class NoGoOutcome(Enum):
    """Outcome of the no-go certificate."""

    NO_OBSTRUCTION = "no_obstruction"  # M = 0, nothing to balance
    OBSTRUCTED = "obstructed"  # M = c Q with Q orthogonal cannot be symmetric and traceless
    INCONCLUSIVE = "inconclusive"  # M is not an orthogonal multiple


@dataclass(frozen=True)
class NoGoCertificate:
    """Measured defects of the pairing matrix and the verdict drawn from them."""

    pairing: np.ndarray
    scale: float
    orthogonal_defect: float
    symmetry_defect: float
    trace: float
    eigenvalue_signs: Tuple[int, ...]
    outcome: NoGoOutcome
    reason: str

    @property
    def obstructed(self) -> bool:
        return self.outcome is NoGoOutcome.OBSTRUCTED

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pairing": self.pairing.tolist(),
            "scale": self.scale,
            "orthogonal_defect": self.orthogonal_defect,
            "symmetry_defect": self.symmetry_defect,
            "trace": self.trace,
            "eigenvalue_signs": list(self.eigenvalue_signs),
            "outcome": self.outcome.value,
            "reason": self.reason,
        }


def pairing_matrix(data: BoundaryData) -> np.ndarray:
    """``M_ij = <F^L_{-,i}, F^R_{+,j}>``."""
    return np.einsum("iab,jab->ij", data.FL_minus, data.FR_plus) / data.algebra.trace_scale


def nogo_su2(data: BoundaryData, tol: float = DEFAULT_TOLERANCE) -> NoGoCertificate:
    """Decide whether the pairing can be ``c Q`` with ``Q`` orthogonal, symmetric and traceless.

    Raises:
        InputError: unless the algebra is three-dimensional
    """
    if data.algebra.dimension != 3:
        raise InputError(
            f"The no-go certificate needs a three-dimensional algebra, got {data.algebra.name} "
            f"(dimension {data.algebra.dimension})"
        )
    M = pairing_matrix(data)
    c = float(np.linalg.norm(M, 2))
    symmetry = float(np.linalg.norm(M - M.T))
    trace = float(np.trace(M))

    if c <= tol:
        return NoGoCertificate(
            pairing=M,
            scale=c,
            orthogonal_defect=0.0,
            symmetry_defect=symmetry,
            trace=trace,
            eigenvalue_signs=(),
            outcome=NoGoOutcome.NO_OBSTRUCTION,
            reason="no obstruction from this pairing: M vanishes",
        )

    U, _ = polar(M)
    orthogonal = float(np.linalg.norm(M / c - U))
    if orthogonal > tol:
        outcome = NoGoOutcome.INCONCLUSIVE
        reason = f"M is not a multiple of an orthogonal matrix (defect {orthogonal:.3e})"
        signs: Tuple[int, ...] = ()
    else:
        Q = 0.5 * (U + U.T)
        signs = tuple(int(s) for s in np.sign(np.linalg.eigvalsh(Q)))
        outcome = NoGoOutcome.OBSTRUCTED
        if symmetry > tol * max(1.0, c):
            reason = f"M = cQ with Q orthogonal is not symmetric (defect {symmetry:.3e})"
        else:
            reason = (
                f"symmetric orthogonal Q has eigenvalues {signs} with odd sum "
                f"{sum(signs)}, so tr M = {trace:.6g} cannot vanish"
            )
    LOGGER.debug("No-go certificate: %s (%s)", outcome.value, reason)
    return NoGoCertificate(
        pairing=M,
        scale=c,
        orthogonal_defect=orthogonal,
        symmetry_defect=symmetry,
        trace=trace,
        eigenvalue_signs=signs,
        outcome=outcome,
        reason=reason,
    )
