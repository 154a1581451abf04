"""Closed-form frames and low eigenmodes on the round unit sphere S^3.

All evaluators accept a single point or a batch of points shaped ``(..., 4)``.
Tangent and cotangent data are stored as ambient vectors in R^4; the
canonical coframe for components is the dual of the ``X_{-,i}`` frame.

Index conventions follow the mathematics (1-based): ``omega(1, p)`` is the
first coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from ym_neck.core.errors import InputError

UNIT_TOLERANCE = 1e-10

SPHERE_VOLUME = 2.0 * np.pi**2


def _antisym(pairs) -> np.ndarray:
    m = np.zeros((4, 4))
    for (a, b), value in pairs:
        m[a, b] = value
        m[b, a] = -value
    return m


# Constant SD and ASD two-forms on R^4 as antisymmetric coefficient arrays.
PHI_PLUS = np.array(
    [
        _antisym((((0, 1), 1.0), ((2, 3), 1.0))),
        _antisym((((0, 2), 1.0), ((1, 3), -1.0))),
        _antisym((((0, 3), 1.0), ((1, 2), 1.0))),
    ]
)
PHI_MINUS = np.array(
    [
        _antisym((((0, 1), 1.0), ((2, 3), -1.0))),
        _antisym((((0, 2), 1.0), ((1, 3), 1.0))),
        _antisym((((0, 3), 1.0), ((1, 2), -1.0))),
    ]
)

# Levi-Civita symbol on three indices.
EPSILON = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    EPSILON[_i, _j, _k] = 1.0
    EPSILON[_i, _k, _j] = -1.0

PointLike = Union["S3Point", np.ndarray, list, tuple]


def sign_value(sign) -> int:
    """Normalize ``'+'``/``'-'`` (or +1/-1) to +1/-1."""
    if sign in ("+", "plus", 1, "sd"):
        return 1
    if sign in ("-", "minus", -1, "asd"):
        return -1
    raise InputError(f"Sign must be '+' or '-', got {sign!r}")


def check_index(i: int, upper: int) -> int:
    """Return the 0-based index for a 1-based ``i`` in ``1..upper``."""
    if isinstance(i, bool) or not isinstance(i, (int, np.integer)) or not 1 <= i <= upper:
        raise InputError(f"Index must be in 1..{upper}, got {i!r}")
    return int(i) - 1


def phi_basis(sign) -> np.ndarray:
    """The three constant two-forms ``Phi_{sign,i}`` as a (3, 4, 4) array."""
    return PHI_PLUS if sign_value(sign) > 0 else PHI_MINUS


@dataclass(frozen=True)
class S3Point:
    """One point, or a batch of points, on the unit sphere."""

    x: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        if x.shape[-1:] != (4,):
            raise InputError(f"S3 points need 4 coordinates, got shape {x.shape}")
        defect = np.max(np.abs(np.sum(x * x, axis=-1) - 1.0), initial=0.0)
        if defect > UNIT_TOLERANCE:
            raise InputError(f"Non-unit input: | |x|^2 - 1 | = {defect:.3e}")
        object.__setattr__(self, "x", x)

    @classmethod
    def normalized(cls, v) -> "S3Point":
        """Project a nonzero vector (or batch) radially onto the sphere."""
        v = np.asarray(v, dtype=float)
        norm = np.linalg.norm(v, axis=-1, keepdims=True)
        if np.any(norm == 0):
            raise InputError("Cannot normalize the zero vector")
        return cls(v / norm)

    @property
    def batch_shape(self):
        return self.x.shape[:-1]


def as_unit(p: PointLike) -> np.ndarray:
    """Coordinates of ``p`` after checking it lies on the sphere."""
    if isinstance(p, S3Point):
        return p.x
    return S3Point(np.asarray(p, dtype=float)).x


@dataclass(frozen=True)
class TangentVec:
    """Tangent vector(s) at ``base``, stored as ambient R^4 vectors."""

    base: np.ndarray
    v: np.ndarray

    def components(self) -> np.ndarray:
        """Components against the orthonormal frame ``X_{-,1..3}``."""
        frame = linear_field(PHI_MINUS, self.base)
        return np.einsum("...jk,...k->...j", frame, self.v)

    def dot(self, other: "TangentVec") -> np.ndarray:
        return np.sum(self.v * other.v, axis=-1)


@dataclass(frozen=True)
class CotangentVec:
    """Covector(s) at ``base``; ``covector`` is the ambient representative."""

    base: np.ndarray
    covector: np.ndarray

    def components(self) -> np.ndarray:
        """Components in the coframe dual to ``X_{-,1..3}``."""
        frame = linear_field(PHI_MINUS, self.base)
        return np.einsum("...jk,...k->...j", frame, self.covector)

    def norm_squared(self) -> np.ndarray:
        return np.sum(self.covector * self.covector, axis=-1)

    def __call__(self, vec: TangentVec) -> np.ndarray:
        return np.sum(self.covector * vec.v, axis=-1)


@dataclass(frozen=True)
class TransitionMatrix:
    """The matrix ``T`` with ``X_{+,i} = -T_ij X_{-,j}`` at ``base``."""

    base: np.ndarray
    T: np.ndarray

    def orthogonality_defect(self) -> float:
        eye = np.eye(3)
        return float(np.max(np.abs(np.swapaxes(self.T, -1, -2) @ self.T - eye)))

    def determinant(self) -> np.ndarray:
        return np.linalg.det(self.T)


def linear_field(matrices: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Evaluate the fields ``-M x`` for a stack of matrices ``M`` (k, 4, 4).

    Works for any radius, so the same helper serves the cylinder frame.
    Returns shape ``(..., k, 4)``.
    """
    return -np.einsum("kab,...b->...ka", matrices, x)


def omega(i: int, p: PointLike) -> np.ndarray:
    """The coordinate eigenfunction ``omega_i = x_i`` (Laplace eigenvalue -3)."""
    idx = check_index(i, 4)
    return as_unit(p)[..., idx]


def psi(i: int, p: PointLike) -> CotangentVec:
    """The exact eigenform ``psi_i = d omega_i`` (Hodge eigenvalue 3)."""
    idx = check_index(i, 4)
    x = as_unit(p)
    covector = np.zeros_like(x)
    covector[..., idx] = 1.0
    covector = covector - x[..., idx, None] * x
    return CotangentVec(base=x, covector=covector)


def x_field(sign, i: int, p: PointLike) -> TangentVec:
    """The unit rotation field ``X_{sign,i}(x) = -Phi_{sign,i} x``."""
    idx = check_index(i, 3)
    x = as_unit(p)
    return TangentVec(base=x, v=-(x @ phi_basis(sign)[idx].T))


def phi(sign, i: int, p: PointLike) -> CotangentVec:
    """The coclosed eigenform ``phi_{sign,i}``, metric dual of ``X_{sign,i}``."""
    field = x_field(sign, i, p)
    return CotangentVec(base=field.base, covector=field.v)


def frame(sign, p: PointLike) -> np.ndarray:
    """All three fields of one sign at ``p`` as an array ``(..., 3, 4)``."""
    return linear_field(phi_basis(sign), as_unit(p))


def transition_values(x: np.ndarray) -> np.ndarray:
    """``T_ij = -X_{+,i} . X_{-,j}`` for raw unit coordinates (no checks)."""
    plus = linear_field(PHI_PLUS, x)
    minus = linear_field(PHI_MINUS, x)
    return -np.einsum("...ia,...ja->...ij", plus, minus)


def t_matrix(p: PointLike) -> TransitionMatrix:
    """The transition matrix between the ``X_-`` and ``X_+`` frames."""
    x = as_unit(p)
    return TransitionMatrix(base=x, T=transition_values(x))


def plus_in_minus_coframe(x: np.ndarray) -> np.ndarray:
    """Components of ``phi_{+,i}`` in the ``phi_-`` coframe: row i is ``-T[i, :]``."""
    return -transition_values(x)
