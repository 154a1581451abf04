"""Cylinder two-forms P, Q, contractions and the cone-map pullback.

Frame components on the cylinder ``R x S^3`` are taken against
``E_0 = d/dt`` and ``E_j = X_{-,j}``; a two-form is stored as the
antisymmetric array ``W_ab = W(E_a, E_b)`` and a one-form as
``(A(d/dt), A(X_{-,1}), A(X_{-,2}), A(X_{-,3}))``. In R^4 the frame at
``y = e^t omega`` is ``E_0 = y`` and ``E_j = -Phi_{-,j} y``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from ym_neck.core.errors import InputError
from ym_neck.geometry.s3 import (
    EPSILON,
    PHI_MINUS,
    PHI_PLUS,
    S3Point,
    as_unit,
    check_index,
    linear_field,
    sign_value,
    transition_values,
)
from .r4 import Chart, TwoFormR4

_FIELD_PATTERN = re.compile(r"^x([+-])(\d)$")


@dataclass(frozen=True, eq=False)
class CylPoint:
    """Point(s) ``(t, omega)`` on the cylinder."""

    t: Union[float, np.ndarray]
    omega: S3Point

    @classmethod
    def at(cls, t, x) -> "CylPoint":
        return cls(t=t, omega=x if isinstance(x, S3Point) else S3Point(x))

    @property
    def ambient(self) -> np.ndarray:
        """The point ``e^t omega`` in R^4."""
        return np.exp(np.asarray(self.t, dtype=float))[..., None] * self.omega.x


@dataclass(frozen=True, eq=False)
class CylOneForm:
    """One-form components ``(..., 4)`` in the ``(dt, phi_-)`` coframe."""

    components: np.ndarray

    @property
    def dt(self) -> np.ndarray:
        return self.components[..., 0]

    @property
    def tangential(self) -> np.ndarray:
        return self.components[..., 1:]

    def mod_dt(self) -> "CylOneForm":
        comps = np.array(self.components, dtype=float)
        comps[..., 0] = 0.0
        return CylOneForm(comps)

    def __sub__(self, other: "CylOneForm") -> "CylOneForm":
        return CylOneForm(self.components - other.components)


@dataclass(frozen=True, eq=False)
class CylTwoForm:
    """Two-form components ``W_ab`` with shape ``(..., 4, 4)``."""

    components: np.ndarray

    def __post_init__(self):
        comps = np.asarray(self.components, dtype=float)
        if comps.shape[-2:] != (4, 4):
            raise InputError(f"Cylinder two-forms need 4x4 components, got {comps.shape}")
        object.__setattr__(self, "components", comps)

    def inner(self, other: "CylTwoForm") -> np.ndarray:
        """Pointwise tensor inner product ``sum_ab W_ab V_ab``."""
        return np.einsum("...ab,...ab->...", self.components, other.components)

    def norm(self) -> np.ndarray:
        return np.sqrt(self.inner(self))

    def __add__(self, other: "CylTwoForm") -> "CylTwoForm":
        return CylTwoForm(self.components + other.components)

    def __sub__(self, other: "CylTwoForm") -> "CylTwoForm":
        return CylTwoForm(self.components - other.components)

    def __mul__(self, factor) -> "CylTwoForm":
        return CylTwoForm(np.asarray(factor)[..., None, None] * self.components)

    __rmul__ = __mul__


def ambient_frame(y: np.ndarray) -> np.ndarray:
    """Cylinder frame pushed into R^4 at ``y``; shape ``(..., 4, 4)`` rows ``E_a``."""
    return np.concatenate([y[..., None, :], linear_field(PHI_MINUS, y)], axis=-2)


def coframe_coefficients(sign, i: int, x: np.ndarray):
    """Components ``c_l = phi_{sign,i}(X_{-,l})`` and derivatives ``X_{-,j} c_l``.

    Returns ``(c, dc)`` with shapes ``(..., 3)`` and ``(..., 3[j], 3[l])``.
    For ``phi_+`` the coefficients are quadratic forms ``x^t M_l x`` with
    ``M_l = -Phi_{+,i} Phi_{-,l}``, differentiated exactly.
    """
    idx = check_index(i, 3)
    batch = x.shape[:-1]
    if sign_value(sign) < 0:
        c = np.zeros(batch + (3,))
        c[..., idx] = 1.0
        return c, np.zeros(batch + (3, 3))
    M = -np.einsum("ab,lbc->lac", PHI_PLUS[idx], PHI_MINUS)
    sym = M + np.swapaxes(M, -1, -2)
    c = 0.5 * np.einsum("...a,lab,...b->...l", x, sym, x)
    # X_j (x^t M x) = x^t (M + M^t)(-Phi_{-,j} x)
    dc = -np.einsum("...a,lab,jbc,...c->...jl", x, sym, PHI_MINUS, x)
    return c, dc


def d_phi(sign, i: int, x) -> np.ndarray:
    """Closed-form ``d phi_{sign,i}`` as tangential components ``(..., 3, 3)``.

    Uses ``[X_{-,j}, X_{-,k}] = 2 eps_jkl X_{-,l}``.
    """
    x = as_unit(x)
    c, dc = coframe_coefficients(sign, i, x)
    return dc - np.swapaxes(dc, -1, -2) - 2.0 * np.einsum("jkl,...l->...jk", EPSILON, c)


def _dt_wedge_plus_d(sign, i: int, x: np.ndarray, dt_factor: float) -> np.ndarray:
    c, _ = coframe_coefficients(sign, i, x)
    W = np.zeros(x.shape[:-1] + (4, 4))
    W[..., 0, 1:] = dt_factor * c
    W[..., 1:, 0] = -dt_factor * c
    W[..., 1:, 1:] = d_phi(sign, i, x)
    return W


def _omega_of(at) -> np.ndarray:
    if isinstance(at, CylPoint):
        return at.omega.x
    return as_unit(at)


def p_form(sign, i: int, at) -> CylTwoForm:
    """``P_{sign,i} = 2 dt ^ phi_{sign,i} + d phi_{sign,i}`` (t-independent)."""
    return CylTwoForm(_dt_wedge_plus_d(sign, i, _omega_of(at), 2.0))


def q_form(sign, i: int, at) -> CylTwoForm:
    """``Q_{sign,i} = -2 dt ^ phi_{sign,i} + d phi_{sign,i}`` (t-independent)."""
    return CylTwoForm(_dt_wedge_plus_d(sign, i, _omega_of(at), -2.0))


def stacked(factory, sign, at) -> np.ndarray:
    """All three forms of one sign, shape ``(..., 3, 4, 4)``."""
    return np.stack([factory(sign, i, at).components for i in (1, 2, 3)], axis=-3)


def vector_field(name: str, at) -> np.ndarray:
    """Frame components ``(..., 4)`` of a canonical field.

    Names: ``"dt"`` for ``d/dt`` and ``"X-1"``..``"X+3"`` for the rotations.
    """
    x = _omega_of(at)
    batch = x.shape[:-1]
    key = name.strip().lower().replace("_", "").replace(",", "")
    if key in ("dt", "d/dt", "t"):
        V = np.zeros(batch + (4,))
        V[..., 0] = 1.0
        return V
    match = _FIELD_PATTERN.match(key)
    if not match:
        raise InputError(f"Unknown vector field: {name!r}")
    idx = check_index(int(match.group(2)), 3)
    V = np.zeros(batch + (4,))
    if match.group(1) == "-":
        V[..., 1 + idx] = 1.0
    else:
        # X_{+,j} = -T_jl X_{-,l}
        V[..., 1:] = -transition_values(x)[..., idx, :]
    return V


CANONICAL_FIELDS = ("dt",) + tuple(f"X-{i}" for i in (1, 2, 3)) + tuple(f"X+{i}" for i in (1, 2, 3))


def contract(V, W: CylTwoForm, at=None) -> CylOneForm:
    """Interior product ``iota_V W`` (the full contraction, no 1/2).

    ``V`` is a canonical field name (evaluated at ``at``) or frame components.
    """
    if isinstance(V, str):
        if at is None:
            raise InputError("A base point is required to evaluate a named field")
        V = vector_field(V, at)
    return CylOneForm(np.einsum("...a,...ab->...b", np.asarray(V, dtype=float), W.components))


def contract_mod_dt(V, W: CylTwoForm, at=None) -> CylOneForm:
    """Tangential part of ``iota_V W`` (its dt component removed)."""
    return contract(V, W, at).mod_dt()


def pullback_pi(F: TwoFormR4, at: CylPoint) -> CylTwoForm:
    """Pullback of a constant x-chart form under ``pi(t, omega) = e^t omega``."""
    if F.chart is not Chart.X:
        raise InputError("pullback_pi needs an x-chart form")
    E = ambient_frame(at.ambient)
    return CylTwoForm(np.einsum("...am,mn,...bn->...ab", E, F.F, E))
