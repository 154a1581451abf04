"""Quadrature grids on S^3 and sampled cylinders.

The default layout parametrizes S^3 by

    x = (sqrt(1-s) cos a, sqrt(1-s) sin a, sqrt(s) cos b, sqrt(s) sin b)

with volume element ``1/2 ds da db``. Gauss-Legendre in ``s`` and the
trapezoid rule in both angles integrate polynomials in ``x`` exactly up to
high degree, which is all the low-mode pairings need.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ym_neck.core.errors import InputError, ResolutionError
from .s3 import SPHERE_VOLUME

LOGGER = logging.getLogger(__name__)

QUADRATURE_MIN_RESOLUTION = 4

LAYOUTS = ("gauss", "montecarlo")


@dataclass(frozen=True, eq=False)
class SphereGrid:
    """Nodes and positive weights on S^3 with ``sum(weights) = 2 pi^2``."""

    nodes: np.ndarray
    weights: np.ndarray
    layout: str = "gauss"
    resolution: int = 0
    seed: Optional[int] = None

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.ndim != 2 or nodes.shape[1] != 4:
            raise InputError(f"Grid nodes must have shape (N, 4), got {nodes.shape}")
        if weights.shape != (nodes.shape[0],):
            raise InputError("Grid weights must match the number of nodes")
        if np.any(weights <= 0):
            raise InputError("Grid weights must be positive")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def size(self) -> int:
        return int(self.nodes.shape[0])

    def integrate(self, values: np.ndarray) -> np.ndarray:
        """Weighted sum over the node axis (axis 0) of ``values``."""
        values = np.asarray(values)
        if values.shape[:1] != (self.size,):
            raise InputError(
                f"Values have {values.shape[:1]} samples, grid has {self.size} nodes"
            )
        return np.tensordot(self.weights, values, axes=(0, 0))

    def same_as(self, other: "SphereGrid") -> bool:
        return self is other or (
            self.size == other.size
            and np.array_equal(self.nodes, other.nodes)
            and np.array_equal(self.weights, other.weights)
        )


def _gauss_grid(resolution: int) -> SphereGrid:
    u, w_u = np.polynomial.legendre.leggauss(resolution)
    s = 0.5 * (u + 1.0)
    w_s = 0.5 * w_u
    k = 2 * resolution
    angles = 2.0 * np.pi * np.arange(k) / k
    ss, aa, bb = np.meshgrid(s, angles, angles, indexing="ij")
    ww = np.broadcast_to(w_s[:, None, None], ss.shape)
    c, d = np.sqrt(1.0 - ss), np.sqrt(ss)
    nodes = np.stack(
        [c * np.cos(aa), c * np.sin(aa), d * np.cos(bb), d * np.sin(bb)], axis=-1
    ).reshape(-1, 4)
    weights = (0.5 * ww * (2.0 * np.pi / k) ** 2).reshape(-1)
    return SphereGrid(nodes=nodes, weights=weights, layout="gauss", resolution=resolution)


def _montecarlo_grid(resolution: int, seed: int) -> SphereGrid:
    count = 4 * resolution**3
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((count, 4))
    nodes = raw / np.linalg.norm(raw, axis=1, keepdims=True)
    weights = np.full(count, SPHERE_VOLUME / count)
    return SphereGrid(
        nodes=nodes, weights=weights, layout="montecarlo", resolution=resolution, seed=seed
    )


def build_sphere_grid(
    resolution: int = 8, layout: str = "gauss", seed: int = 0
) -> SphereGrid:
    """Build a quadrature grid on S^3.

    Args:
        resolution: Gauss-Legendre nodes in ``s`` (the angles use twice as
            many); the Monte Carlo layout draws the same number of nodes
        layout: ``"gauss"`` or ``"montecarlo"``
        seed: RNG seed for the Monte Carlo layout

    Raises:
        ResolutionError: if ``resolution`` is below the quadrature threshold
        InputError: for an unknown layout
    """
    if resolution < QUADRATURE_MIN_RESOLUTION:
        raise ResolutionError(
            f"quadrature below threshold: resolution {resolution} "
            f"< {QUADRATURE_MIN_RESOLUTION}"
        )
    if layout == "gauss":
        grid = _gauss_grid(resolution)
    elif layout == "montecarlo":
        grid = _montecarlo_grid(resolution, seed)
    else:
        raise InputError(f"Unknown grid layout: {layout} (expected one of {LAYOUTS})")
    LOGGER.debug("Built %s sphere grid: resolution=%d nodes=%d", layout, resolution, grid.size)
    return grid


@dataclass(frozen=True, eq=False)
class CylinderGrid:
    """Product of t-slices with a sphere grid; ambient points are ``e^t omega``."""

    t: np.ndarray
    sphere: SphereGrid
    _points: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float).reshape(-1)
        if t.size == 0:
            raise InputError("Cylinder grid needs at least one slice")
        if t.size > 1 and np.any(np.diff(t) <= 0):
            raise InputError("Cylinder slices must be strictly increasing")
        object.__setattr__(self, "t", t)

    @classmethod
    def uniform(cls, t_min: float, t_max: float, count: int, sphere: SphereGrid) -> "CylinderGrid":
        return cls(t=np.linspace(t_min, t_max, count), sphere=sphere)

    @property
    def shape(self):
        return (self.t.size, self.sphere.size)

    @property
    def spacing(self) -> float:
        """Uniform slice spacing; raises ``InputError`` for irregular grids."""
        if self.t.size < 2:
            raise ResolutionError("A single slice has no spacing")
        steps = np.diff(self.t)
        if np.max(np.abs(steps - steps[0])) > 1e-9 * max(1.0, abs(steps[0])):
            raise InputError("Cylinder grid is not uniformly spaced in t")
        return float(steps[0])

    def points(self) -> np.ndarray:
        """Ambient R^4 points, shape ``(nt, N, 4)``."""
        if self._points is None:
            pts = np.exp(self.t)[:, None, None] * self.sphere.nodes[None, :, :]
            object.__setattr__(self, "_points", pts)
        return self._points

    def slice_index(self, t: float, tol: float = 1e-9) -> int:
        """Index of the slice at ``t``; raises ``InputError`` if absent."""
        idx = int(np.argmin(np.abs(self.t - t)))
        if abs(self.t[idx] - t) > tol * max(1.0, abs(t)):
            raise InputError(f"No slice at t={t} (nearest {self.t[idx]})")
        return idx
