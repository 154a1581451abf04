"""Constant two-forms on R^4 in the x- and y-charts.

A form is ``1/2 sum F_mn dx_m ^ dx_n`` with antisymmetric ``F``. Norms are
tensor norms (``|F|^2 = sum_mn F_mn^2``), so every ``Phi_{+-,i}`` has norm 2.
The y-chart (``y = x/|x|^2`` up to scale) reverses orientation, so a form
that is self-dual as a coefficient array is anti-self-dual on the manifold
when tagged with the y-chart.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ym_neck.core.errors import InputError
from ym_neck.geometry.s3 import check_index, phi_basis

# Four-index Levi-Civita symbol.
EPSILON4 = np.zeros((4, 4, 4, 4))
for _perm in itertools.permutations(range(4)):
    _sign = np.linalg.det(np.eye(4)[list(_perm)])
    EPSILON4[_perm] = round(_sign)


class Chart(Enum):
    """Coordinate chart a constant form is written in."""

    X = "x"  # Body chart, standard orientation
    Y = "y"  # Bubble chart, orientation reversed

    @classmethod
    def parse(cls, value) -> "Chart":
        if isinstance(value, Chart):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InputError(f"Chart must be 'x' or 'y', got {value!r}") from None


def coefficient_star(F: np.ndarray) -> np.ndarray:
    """Euclidean Hodge star on coefficient arrays: ``(*F)_ab = 1/2 eps_abcd F_cd``."""
    return 0.5 * np.einsum("abcd,...cd->...ab", EPSILON4, F)


@dataclass(frozen=True, eq=False)
class TwoFormR4:
    """A constant two-form with its chart tag."""

    F: np.ndarray
    chart: Chart = Chart.X

    def __post_init__(self):
        F = np.asarray(self.F, dtype=float)
        if F.shape != (4, 4):
            raise InputError(f"Two-form coefficients must be 4x4, got {F.shape}")
        if np.max(np.abs(F + F.T)) > 1e-12 * max(1.0, float(np.max(np.abs(F)))):
            raise InputError("Two-form coefficients must be antisymmetric")
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "chart", Chart.parse(self.chart))

    @property
    def orientation(self) -> int:
        return 1 if self.chart is Chart.X else -1

    def star(self) -> "TwoFormR4":
        """Hodge star for the manifold orientation."""
        return TwoFormR4(self.orientation * coefficient_star(self.F), self.chart)

    def self_dual_part(self) -> "TwoFormR4":
        return TwoFormR4(0.5 * (self.F + self.star().F), self.chart)

    def anti_self_dual_part(self) -> "TwoFormR4":
        return TwoFormR4(0.5 * (self.F - self.star().F), self.chart)

    def inner(self, other: "TwoFormR4") -> float:
        return float(np.sum(self.F * other.F))

    def norm(self) -> float:
        return float(np.sqrt(self.inner(self)))

    def __add__(self, other: "TwoFormR4") -> "TwoFormR4":
        if other.chart is not self.chart:
            raise InputError("Cannot add forms written in different charts")
        return TwoFormR4(self.F + other.F, self.chart)


def phi_r4(sign, i: int, chart="x") -> TwoFormR4:
    """The basis form ``Phi_{sign,i}``; star eigenvalue ``sign`` in the x-chart."""
    idx = check_index(i, 3)
    return TwoFormR4(phi_basis(sign)[idx].copy(), Chart.parse(chart))
