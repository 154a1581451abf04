"""Neck geometry and connections sampled on cylinder grids."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ym_neck.config.algebras import LieAlgebra
from ym_neck.core.errors import InputError
from ym_neck.geometry.quadrature import CylinderGrid, SphereGrid
from .connection import ConnectionForm

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class NeckGeometry:
    """The neck ``[log lam - log delta, log delta] x S^3`` of a bubble of scale ``lam``."""

    lam: float
    delta: float

    def __post_init__(self):
        if not (self.lam > 0 and 0 < self.delta < 1):
            raise InputError(f"Invalid scales: lambda={self.lam}, delta={self.delta}")
        if self.lam >= self.delta**2:
            raise InputError(
                f"No neck: lambda={self.lam} must be smaller than delta^2={self.delta**2}"
            )

    @property
    def log_lam(self) -> float:
        return float(np.log(self.lam))

    @property
    def t_min(self) -> float:
        """Bubble end of the neck, ``log lam - log delta``."""
        return float(np.log(self.lam) - np.log(self.delta))

    @property
    def t_max(self) -> float:
        """Body end of the neck, ``log delta``."""
        return float(np.log(self.delta))

    @property
    def center(self) -> float:
        return 0.5 * self.log_lam

    @property
    def length(self) -> float:
        return self.t_max - self.t_min

    @property
    def inner_radius(self) -> float:
        return self.lam / self.delta

    @property
    def outer_radius(self) -> float:
        return self.delta

    def eta(self, t) -> np.ndarray:
        """The two-sided weight ``e^t + lam e^-t`` (minimum ``2 sqrt(lam)`` at the centre)."""
        t = np.asarray(t, dtype=float)
        return np.exp(t) + self.lam * np.exp(-t)

    def grid(self, slices: int, sphere: SphereGrid) -> CylinderGrid:
        """Uniform slices covering the whole neck, endpoints included."""
        if slices < 2:
            raise InputError("A neck grid needs at least two slices")
        return CylinderGrid.uniform(self.t_min, self.t_max, slices, sphere)

    def centered_grid(self, half_width_slices: int, spacing: float, sphere: SphereGrid) -> CylinderGrid:
        """Uniform slices symmetric about the neck centre."""
        offsets = spacing * np.arange(-half_width_slices, half_width_slices + 1)
        return CylinderGrid(t=self.center + offsets, sphere=sphere)


@dataclass(frozen=True, eq=False)
class GaugeField:
    """A connection sampled on a cylinder grid.

    ``f`` holds ``A(d/dt)`` with shape ``(nt, N, n, n)`` and ``xi`` holds
    ``A(X_{-,j})`` with shape ``(nt, N, 3, n, n)``. ``source`` keeps the
    evaluable connection when the samples came from one.
    """

    f: np.ndarray
    xi: np.ndarray
    grid: CylinderGrid
    algebra: LieAlgebra
    lam: Optional[float] = None
    delta: Optional[float] = None
    source: Optional[ConnectionForm] = None

    def __post_init__(self):
        f = np.asarray(self.f, dtype=float)
        xi = np.asarray(self.xi, dtype=float)
        nt, n_nodes = self.grid.shape
        shape = self.algebra.shape
        if f.shape != (nt, n_nodes) + shape:
            raise InputError(f"f samples {f.shape} do not match grid {(nt, n_nodes)} x {shape}")
        if xi.shape != (nt, n_nodes, 3) + shape:
            raise InputError(f"xi samples {xi.shape} do not match grid {(nt, n_nodes, 3)} x {shape}")
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "xi", xi)

    @property
    def components(self) -> np.ndarray:
        """All frame components stacked, shape ``(nt, N, 4, n, n)``."""
        return np.concatenate([self.f[:, :, None], self.xi], axis=2)

    @property
    def geometry(self) -> Optional[NeckGeometry]:
        if self.lam is None or self.delta is None:
            return None
        return NeckGeometry(self.lam, self.delta)

    @classmethod
    def from_components(cls, components: np.ndarray, grid: CylinderGrid, algebra: LieAlgebra, **meta):
        """Split stacked components ``(nt, N, 4, n, n)`` into ``f`` and ``xi``."""
        components = np.asarray(components, dtype=float)
        return cls(f=components[:, :, 0], xi=components[:, :, 1:], grid=grid, algebra=algebra, **meta)

    def with_components(self, components: np.ndarray, source: Optional[ConnectionForm] = None) -> "GaugeField":
        """Same grid, algebra and scales with new stacked components."""
        return GaugeField.from_components(
            components, self.grid, self.algebra, lam=self.lam, delta=self.delta, source=source
        )


def sample_connection(A: ConnectionForm, grid: CylinderGrid, lam=None, delta=None) -> GaugeField:
    """Sample the cylinder frame components of ``A`` on every grid point."""
    comps = A.cylinder_components(grid.points())
    return GaugeField.from_components(comps, grid, A.algebra, lam=lam, delta=delta, source=A)


def to_cylinder(
    A: ConnectionForm,
    geom: NeckGeometry,
    grid: Optional[CylinderGrid] = None,
    sphere: Optional[SphereGrid] = None,
    slices: int = 41,
) -> GaugeField:
    """Pull ``A`` back under ``pi(t, omega) = e^t omega`` over the neck of ``geom``.

    Raises:
        InputError: if the chart of ``A`` does not cover the annulus
            ``lam/delta <= |x| <= delta`` or the grid leaves the neck
    """
    if not A.covers(geom.inner_radius, geom.outer_radius):
        raise InputError(
            f"annulus not covered: {A.label} lives on ({A.inner_radius}, {A.outer_radius}), "
            f"neck needs [{geom.inner_radius}, {geom.outer_radius}]"
        )
    if grid is None:
        if sphere is None:
            raise InputError("to_cylinder needs either a cylinder grid or a sphere grid")
        grid = geom.grid(slices, sphere)
    pad = 1e-9 * max(1.0, abs(geom.t_min))
    if grid.t[0] < geom.t_min - pad or grid.t[-1] > geom.t_max + pad:
        raise InputError("annulus not covered: grid slices leave the neck")
    LOGGER.debug("Sampling %s on %d slices x %d nodes", A.label, *grid.shape)
    return sample_connection(A, grid, lam=geom.lam, delta=geom.delta)
