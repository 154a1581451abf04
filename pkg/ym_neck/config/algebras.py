"""Structure Lie algebras for gauge fields.

A ``LieAlgebra`` fixes a real skew-symmetric matrix representation together
with the inner product ``<A, B> = Tr(A B^t) / trace_scale``. The scale is
chosen per representation so that the registered basis is orthonormal:

* ``su2``: left multiplication by the unit quaternions i, j, k on R^4; the
  basis satisfies q_i q_j = -delta_ij + eps_ijk q_k and Tr(q_i q_i^t) = 4.
* ``so3``: the 3x3 adjoint basis (L_i)_jk = -eps_ijk with Tr(L_i L_i^t) = 2.
* ``matrixN``: bare N x N matrices with the literal trace pairing.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ym_neck.core.config_paths import ConfigPaths
from ym_neck.core.errors import InputError

LOGGER = logging.getLogger(__name__)

_GENERIC_PATTERN = re.compile(r"^matrix(\d+)$")


def _quaternion_basis() -> np.ndarray:
    q1 = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
    q2 = [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]]
    q3 = [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]]
    return np.array([q1, q2, q3], dtype=float)


def _adjoint_basis() -> np.ndarray:
    basis = np.zeros((3, 3, 3))
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        basis[i, j, k] = -1.0
        basis[i, k, j] = 1.0
    return basis


@dataclass(frozen=True)
class LieAlgebra:
    """A matrix Lie algebra with its normalized trace inner product."""

    name: str
    display_name: str
    matrix_size: int
    trace_scale: float
    basis: Optional[np.ndarray] = field(default=None, compare=False, repr=False)

    @property
    def dimension(self) -> int:
        """Dimension of the algebra (number of basis elements)."""
        if self.basis is None:
            n = self.matrix_size
            return n * (n - 1) // 2
        return int(self.basis.shape[0])

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.matrix_size, self.matrix_size)

    def inner(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Return Tr(a b^t) / trace_scale, broadcasting over leading axes."""
        return np.einsum("...ij,...ij->...", a, b) / self.trace_scale

    def norm(self, a: np.ndarray) -> np.ndarray:
        return np.sqrt(np.maximum(self.inner(a, a), 0.0))

    def zero(self) -> np.ndarray:
        return np.zeros(self.shape)

    def element(self, coefficients) -> np.ndarray:
        """Combine basis elements with the given coefficients."""
        if self.basis is None:
            raise InputError(f"Algebra {self.name} has no registered basis")
        coefficients = np.asarray(coefficients, dtype=float)
        return np.tensordot(coefficients, self.basis, axes=([-1], [0]))

    def coordinates(self, a: np.ndarray) -> np.ndarray:
        """Coordinates of ``a`` in the (orthonormal) basis."""
        if self.basis is None:
            raise InputError(f"Algebra {self.name} has no registered basis")
        return np.stack([self.inner(a, e) for e in self.basis], axis=-1)

    def check_member(self, a: np.ndarray, tol: float = 1e-12) -> None:
        """Raise ``InputError`` unless ``a`` is a skew matrix of the right size."""
        a = np.asarray(a, dtype=float)
        if a.shape[-2:] != self.shape:
            raise InputError(
                f"Expected {self.matrix_size}x{self.matrix_size} matrices for "
                f"{self.name}, got shape {a.shape[-2:]}"
            )
        skew = np.max(np.abs(a + np.swapaxes(a, -1, -2)), initial=0.0)
        if skew > tol * max(1.0, float(np.max(np.abs(a), initial=0.0))):
            raise InputError(f"Matrix is not skew-symmetric (defect {skew:.3e})")


def _load_json_config(path: Path) -> Dict[str, Any]:
    """Loads and returns content of a JSON file."""
    if not path.exists():
        return {}
    try:
        content = path.read_text(encoding="utf-8")
        if not content.strip():
            return {}
        return json.loads(content)
    except (OSError, json.JSONDecodeError):
        LOGGER.debug("Failed to load configuration file: %s", path, exc_info=True)
        return {}


class AlgebraRegistry:
    """Registry providing a single source of truth for structure algebras."""

    SU2 = LieAlgebra(
        name="su2",
        display_name="su(2), quaternionic basis i, j, k",
        matrix_size=4,
        trace_scale=4.0,
        basis=_quaternion_basis(),
    )

    SO3 = LieAlgebra(
        name="so3",
        display_name="so(3), adjoint basis",
        matrix_size=3,
        trace_scale=2.0,
        basis=_adjoint_basis(),
    )

    _ALL_ALGEBRAS: Tuple[LieAlgebra, ...] = (SU2, SO3)

    DEFAULT = SU2

    @classmethod
    def all_algebras(cls) -> Tuple[LieAlgebra, ...]:
        """Return all registered algebras."""

        return cls._ALL_ALGEBRAS

    @classmethod
    def _indexed_algebras(cls) -> Dict[str, LieAlgebra]:
        """Return a mapping of algebra names to algebras."""

        if not hasattr(cls, "_cached_indexed_algebras"):
            cls._cached_indexed_algebras = {a.name: a for a in cls.all_algebras()}
        return cls._cached_indexed_algebras

    @classmethod
    def _load_aliases(cls) -> Dict[str, str]:
        """Load algebra aliases from the packaged defaults and the user file.

        User aliases override the defaults.
        """
        if hasattr(cls, "_cached_aliases"):
            return cls._cached_aliases

        aliases: Dict[str, str] = {}
        default_file = Path(__file__).parent / "defaults" / "algebra_aliases.json"
        for source, path in (
            ("default", default_file),
            ("user", ConfigPaths.get_algebra_aliases_file()),
        ):
            data = _load_json_config(path)
            for alias, target in data.get("algebra_aliases", {}).items():
                if not isinstance(target, str):
                    LOGGER.warning(
                        "Invalid algebra alias '%s' in %s configuration", alias, source
                    )
                    continue
                aliases[alias.lower()] = target.lower()

        cls._cached_aliases = aliases
        return aliases

    @classmethod
    def generic(cls, matrix_size: int) -> LieAlgebra:
        """Bare skew matrices of the given size with the literal trace pairing."""
        if matrix_size < 2:
            raise InputError(f"Matrix size must be at least 2, got {matrix_size}")
        return LieAlgebra(
            name=f"matrix{matrix_size}",
            display_name=f"{matrix_size}x{matrix_size} skew matrices",
            matrix_size=matrix_size,
            trace_scale=1.0,
        )

    @classmethod
    def get(cls, name: Optional[str]) -> Optional[LieAlgebra]:
        """Return the algebra registered under ``name`` or an alias of it."""
        if not name:
            return None
        clean = name.strip().lower()
        algebras = cls._indexed_algebras()
        if clean in algebras:
            return algebras[clean]
        target = cls._load_aliases().get(clean)
        if target:
            if target in algebras:
                return algebras[target]
            LOGGER.warning("Alias '%s' points to unknown algebra: %s", clean, target)
            return None
        match = _GENERIC_PATTERN.match(clean)
        if match:
            return cls.generic(int(match.group(1)))
        return None

    @classmethod
    def resolve(cls, name: Optional[str]) -> LieAlgebra:
        """Like ``get`` but raises ``InputError`` for unknown names."""
        if name is None:
            return cls.DEFAULT
        algebra = cls.get(name)
        if algebra is None:
            raise InputError(f"Unknown Lie algebra: {name}")
        return algebra

    @classmethod
    def for_matrices(cls, name: Optional[str], matrix_size: int) -> LieAlgebra:
        """Resolve ``name`` and check it matches the observed matrix size."""
        if name is None:
            for algebra in cls.all_algebras():
                if algebra.matrix_size == matrix_size:
                    return algebra
            return cls.generic(matrix_size)
        algebra = cls.resolve(name)
        if algebra.matrix_size != matrix_size:
            raise InputError(
                f"Algebra {algebra.name} uses {algebra.matrix_size}x"
                f"{algebra.matrix_size} matrices, got {matrix_size}x{matrix_size}"
            )
        return algebra
