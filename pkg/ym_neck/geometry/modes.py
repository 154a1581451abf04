"""The materialized low-mode table on S^3 and L^2 projection onto it.

Scalar modes: the constant (eigenvalue 0) and omega_1..4 (eigenvalue 3).
One-form modes: psi_1..4 (eigenvalue 3) and phi_{+,i}, phi_{-,i} (eigenvalue 4).
Eigenvalues are for the nonnegative Laplacian, so ``-Delta omega_i = 3 omega_i``.
The next eigenvalue on both tables is 8 (the spectral gap).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ym_neck.core.errors import InputError
from .quadrature import SphereGrid
from .s3 import PHI_MINUS, linear_field, plus_in_minus_coframe

LOGGER = logging.getLogger(__name__)

GAP_EIGENVALUE = 8.0
# Remainders below this L^2 size, relative to the reference energy, are roundoff
NOISE_FLOOR = 1e-12


@dataclass(frozen=True)
class SphereMode:
    """One entry of the mode table."""

    name: str
    eigenvalue: float
    degree: int  # 0 for functions, 1 for one-forms


SCALAR_MODES: Tuple[SphereMode, ...] = (SphereMode("1", 0.0, 0),) + tuple(
    SphereMode(f"omega{i}", 3.0, 0) for i in range(1, 5)
)

ONE_FORM_MODES: Tuple[SphereMode, ...] = (
    tuple(SphereMode(f"psi{i}", 3.0, 1) for i in range(1, 5))
    + tuple(SphereMode(f"phi+{i}", 4.0, 1) for i in range(1, 4))
    + tuple(SphereMode(f"phi-{i}", 4.0, 1) for i in range(1, 4))
)


def mode_table(degree: int) -> Tuple[SphereMode, ...]:
    """Return the materialized modes of a given form degree.

    Args:
        degree: 0 for functions, 1 for one-forms

    Returns:
        The five scalar modes or the ten one-form modes below the gap

    Raises:
        InputError: for any other degree
    """
    if degree == 0:
        return SCALAR_MODES
    if degree == 1:
        return ONE_FORM_MODES
    raise InputError(f"No mode table for degree {degree}")


def mode_index(name: str, degree: int) -> int:
    """Position of ``name`` in the table of the given degree."""
    for index, mode in enumerate(mode_table(degree)):
        if mode.name == name:
            return index
    raise InputError(f"Unknown degree-{degree} mode: {name}")


def scalar_mode_samples(x: np.ndarray) -> np.ndarray:
    """Scalar modes at unit points ``x`` (..., 4); returns ``(5, ...)``."""
    return np.concatenate([np.ones((1,) + x.shape[:-1]), np.moveaxis(x, -1, 0)], axis=0)


def one_form_mode_samples(x: np.ndarray) -> np.ndarray:
    """One-form modes in the phi_- coframe; returns ``(10, ..., 3)``."""
    psi = np.moveaxis(linear_field(PHI_MINUS, x), -1, 0)  # psi_i(X_j) = (X_j)_i
    plus = np.moveaxis(plus_in_minus_coframe(x), -2, 0)
    minus = np.moveaxis(np.broadcast_to(np.eye(3), x.shape[:-1] + (3, 3)), -2, 0)
    return np.concatenate([psi, plus, minus], axis=0)


def mode_samples(degree: int, x: np.ndarray) -> np.ndarray:
    """Basis samples with a trailing component axis of length 1 or 3."""
    if degree == 0:
        return scalar_mode_samples(x)[..., None]
    if degree == 1:
        return one_form_mode_samples(x)
    raise InputError(f"No mode table for degree {degree}")


@dataclass(frozen=True)
class ModeProjection:
    """Result of projecting samples onto the mode table.

    ``coefficients`` has layout ``(*lead, modes, *value_shape)``;
    ``remainder`` has the layout of the input samples and
    ``out_of_basis_fraction`` is the L^2 ratio |remainder| / |input| per
    leading index (0 for vanishing input or a remainder at roundoff level).
    """

    modes: Tuple[SphereMode, ...]
    coefficients: np.ndarray
    remainder: np.ndarray
    out_of_basis_fraction: np.ndarray

    @property
    def max_fraction(self) -> float:
        return float(np.max(self.out_of_basis_fraction, initial=0.0))


def _flatten(values: np.ndarray, degree: int, grid: SphereGrid, lead_ndim: int):
    lead = values.shape[:lead_ndim]
    ncomp = 3 if degree == 1 else 1
    expected = (grid.size,) + ((3,) if degree == 1 else ())
    if values.shape[lead_ndim : lead_ndim + len(expected)] != expected:
        raise InputError(
            f"Samples {values.shape} do not match {grid.size} nodes for a degree-{degree} field"
        )
    value_shape = values.shape[lead_ndim + len(expected) :]
    return values.reshape(lead + (grid.size, ncomp, -1)), lead, value_shape


def project_onto_modes(
    values: np.ndarray,
    degree: int,
    grid: SphereGrid,
    lead_ndim: int = 0,
    reference_energy: Optional[float] = None,
) -> ModeProjection:
    """Project sampled data onto the mode table of the given degree.

    ``values`` is laid out ``(*lead, N, [3,] *value_shape)`` with ``lead_ndim``
    leading axes; the component axis exists for one-forms. The projection
    uses the quadrature Gram matrix, so in-span data is reproduced exactly
    on any layout.

    Args:
        values: Samples on the grid nodes
        degree: 0 for functions, 1 for one-forms
        grid: Sphere grid the samples live on
        lead_ndim: Number of leading axes (slices) to project independently
        reference_energy: L^2 energy the remainder is judged against when
            deciding whether it is roundoff. Defaults to the largest
            per-slice energy of ``values``; callers projecting one component
            of a larger field pass the energy of the whole field.

    Returns:
        ModeProjection whose ``out_of_basis_fraction`` is 0 wherever the
        remainder lies below ``NOISE_FLOOR`` relative to the reference

    Raises:
        InputError: if the samples do not match the grid
    """
    values = np.asarray(values, dtype=float)
    flat, lead, value_shape = _flatten(values, degree, grid, lead_ndim)
    basis = mode_samples(degree, grid.nodes)
    w = grid.weights
    gram = np.einsum("anc,n,bnc->ab", basis, w, basis)
    rhs = np.einsum("anc,n,...ncv->...av", basis, w, flat)
    coefficients = np.linalg.solve(gram, rhs)
    recon = np.einsum("...av,anc->...ncv", coefficients, basis)
    residual = flat - recon
    energy = np.einsum("n,...ncv->...", w, flat * flat)
    rem_energy = np.einsum("n,...ncv->...", w, residual * residual)
    if reference_energy is None:
        reference_energy = float(np.max(energy, initial=0.0))
    rem_energy = np.maximum(rem_energy, 0.0)
    significant = (energy > 0) & (rem_energy > NOISE_FLOOR**2 * reference_energy)
    safe = np.where(energy > 0, energy, 1.0)
    fraction = np.where(significant, np.sqrt(rem_energy / safe), 0.0)
    return ModeProjection(
        modes=mode_table(degree),
        coefficients=coefficients.reshape(lead + (basis.shape[0],) + value_shape),
        remainder=residual.reshape(values.shape),
        out_of_basis_fraction=fraction,
    )


def reconstruct(
    coefficients: np.ndarray, degree: int, grid: SphereGrid, lead_ndim: int = 0
) -> np.ndarray:
    """Samples of ``sum_a coefficients[a] * mode_a``; inverse of the projection."""
    coefficients = np.asarray(coefficients, dtype=float)
    basis = mode_samples(degree, grid.nodes)
    m = basis.shape[0]
    lead = coefficients.shape[:lead_ndim]
    if coefficients.shape[lead_ndim : lead_ndim + 1] != (m,):
        raise InputError(f"Expected {m} coefficients on axis {lead_ndim}, got {coefficients.shape}")
    value_shape = coefficients.shape[lead_ndim + 1 :]
    flat = coefficients.reshape(lead + (m, -1))
    out = np.einsum("...av,anc->...ncv", flat, basis)
    if degree == 0:
        out = out[..., 0, :]
    return out.reshape(out.shape[:-1] + value_shape)
