"""Sampled differential forms on S^3 slices and on cylinder grids."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np

from ym_neck.config.algebras import LieAlgebra
from ym_neck.core.errors import InputError
from .quadrature import SphereGrid


class FormKind(Enum):
    """Degree and frame of a sampled form."""

    FUNCTION = "function"  # Scalar (0-form), no component axis
    SPHERE_ONE_FORM = "sphere_one_form"  # Components in the phi_{-,1..3} coframe
    CYLINDER_ONE_FORM = "cylinder_one_form"  # Components (dt, phi_{-,1..3})

    @property
    def components(self) -> int:
        return {"function": 0, "sphere_one_form": 3, "cylinder_one_form": 4}[self.value]


@dataclass(frozen=True, eq=False)
class FormField:
    """A form sampled on a sphere grid, optionally stacked over t-slices.

    ``values`` has layout ``([nt,] N, [components,] *value_shape)`` where the
    leading ``nt`` axis exists only when ``t`` is an array. ``value_shape`` is
    ``()`` for real-valued forms and ``(n, n)`` for Lie-algebra valued ones.
    """

    kind: FormKind
    values: np.ndarray
    grid: SphereGrid
    t: Optional[Union[float, np.ndarray]] = None
    algebra: Optional[LieAlgebra] = None

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        offset = 0
        if self.is_cylinder:
            t = np.asarray(self.t, dtype=float).reshape(-1)
            object.__setattr__(self, "t", t)
            if values.shape[:1] != (t.size,):
                raise InputError(
                    f"Expected {t.size} slices on the leading axis, got {values.shape[:1]}"
                )
            offset = 1
        if values.shape[offset : offset + 1] != (self.grid.size,):
            raise InputError(
                f"Sample layout does not match grid: {values.shape} vs {self.grid.size} nodes"
            )
        ncomp = self.kind.components
        if ncomp and values.shape[offset + 1 : offset + 2] != (ncomp,):
            raise InputError(f"{self.kind.value} needs {ncomp} components, got {values.shape}")
        if self.algebra is not None and values.shape[-2:] != self.algebra.shape:
            raise InputError(
                f"Values are not {self.algebra.matrix_size}x{self.algebra.matrix_size} matrices"
            )
        object.__setattr__(self, "values", values)

    @property
    def is_cylinder(self) -> bool:
        return self.t is not None and np.ndim(self.t) > 0

    @property
    def value_shape(self):
        lead = (2 if self.is_cylinder else 1) + (1 if self.kind.components else 0)
        return self.values.shape[lead:]

    def slice(self, index: int) -> "FormField":
        """The sphere field at slice ``index`` of a cylinder field."""
        if not self.is_cylinder:
            raise InputError("Only cylinder fields can be sliced")
        return FormField(
            kind=self.kind,
            values=self.values[index],
            grid=self.grid,
            t=float(self.t[index]),
            algebra=self.algebra,
        )

    def pointwise_inner(self, other: "FormField") -> np.ndarray:
        """Pointwise frame inner product, reduced over components and values."""
        _check_compatible(self, other)
        axes_skip = 2 if self.is_cylinder else 1
        prod = self.values * other.values
        reduced = prod.reshape(prod.shape[:axes_skip] + (-1,)).sum(axis=-1)
        scale = self.algebra.trace_scale if self.algebra is not None else 1.0
        return reduced / scale

    def __add__(self, other: "FormField") -> "FormField":
        _check_compatible(self, other)
        return FormField(self.kind, self.values + other.values, self.grid, self.t, self.algebra)

    def __sub__(self, other: "FormField") -> "FormField":
        _check_compatible(self, other)
        return FormField(self.kind, self.values - other.values, self.grid, self.t, self.algebra)

    def scaled(self, factor: float) -> "FormField":
        return FormField(self.kind, factor * self.values, self.grid, self.t, self.algebra)

    def with_values(self, values: np.ndarray) -> "FormField":
        return FormField(self.kind, values, self.grid, self.t, self.algebra)


def _check_compatible(f: FormField, g: FormField) -> None:
    if not f.grid.same_as(g.grid):
        raise InputError("Fields are sampled on different grids")
    if f.kind is not g.kind:
        raise InputError(f"Degree mismatch: {f.kind.value} vs {g.kind.value}")
    if f.values.shape != g.values.shape:
        raise InputError(f"Sample shapes differ: {f.values.shape} vs {g.values.shape}")


def l2_inner(f: FormField, g: FormField, grid: Optional[SphereGrid] = None) -> np.ndarray:
    """Quadrature of the integral of <f, g> over S^3.

    Returns a scalar for slice fields and one value per slice for cylinder
    fields.

    Raises:
        InputError: on grid mismatch (including a mismatching ``grid``
            argument) or degree mismatch
    """
    if grid is not None and not grid.same_as(f.grid):
        raise InputError("Field is not sampled on the requested grid")
    pointwise = f.pointwise_inner(g)
    if f.is_cylinder:
        return pointwise @ f.grid.weights
    return float(f.grid.integrate(pointwise))
