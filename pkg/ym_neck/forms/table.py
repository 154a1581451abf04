"""Closed-form contraction table of the canonical fields into ``P_{+-,i}``.

Entries are stored as ``1/2 iota_V P`` (the tabulated convention) in the
``(dt, phi_-)`` coframe:

    1/2 iota_{d/dt} P_{s,i}  = phi_{s,i}
    1/2 iota_{X-j}  P_{-,i}  = -delta_ij dt + eps_jik phi_{-,k}
    1/2 iota_{X+j}  P_{+,i}  = -delta_ij dt - eps_jik phi_{+,k}

The mixed entries follow from ``X_{+,j} = -T_jl X_{-,l}`` and
``X_{-,j} = -T_lj X_{+,l}``.
"""

from __future__ import annotations

from typing import Tuple

import numpy as np

from ym_neck.core.errors import InputError
from ym_neck.geometry.s3 import EPSILON, as_unit, check_index, sign_value, transition_values
from .cylinder import CANONICAL_FIELDS, CylOneForm, _FIELD_PATTERN, contract, p_form


def _phi_components(sign: int, x: np.ndarray) -> np.ndarray:
    """Rows ``phi_{sign,k}`` in the phi_- coframe, shape ``(..., 3, 3)``."""
    if sign < 0:
        return np.broadcast_to(np.eye(3), x.shape[:-1] + (3, 3))
    return -transition_values(x)


def _same_sign_entry(sign: int, j: int, i: int, x: np.ndarray) -> np.ndarray:
    out = np.zeros(x.shape[:-1] + (4,))
    out[..., 0] = -1.0 if i == j else 0.0
    rows = _phi_components(sign, x)
    out[..., 1:] = -sign * np.einsum("k,...kl->...l", EPSILON[j, i], rows)
    return out


def half_entry(field: str, sign, i: int, x) -> np.ndarray:
    """Tabulated ``1/2 iota_V P_{sign,i}`` as frame components ``(..., 4)``."""
    x = as_unit(x)
    s = sign_value(sign)
    idx = check_index(i, 3)
    key = field.strip().lower()
    if key == "dt":
        out = np.zeros(x.shape[:-1] + (4,))
        out[..., 1:] = _phi_components(s, x)[..., idx, :]
        return out
    match = _FIELD_PATTERN.match(key)
    if not match:
        raise InputError(f"Unknown vector field: {field!r}")
    v_sign = 1 if match.group(1) == "+" else -1
    j = check_index(int(match.group(2)), 3)
    if v_sign == s:
        return _same_sign_entry(s, j, idx, x)
    T = transition_values(x)
    if v_sign > 0:
        # X_{+,j} = -T_jl X_{-,l} contracted into P_-
        parts = np.stack([_same_sign_entry(-1, l, idx, x) for l in range(3)], axis=-2)
        return -np.einsum("...l,...lb->...b", T[..., j, :], parts)
    parts = np.stack([_same_sign_entry(1, l, idx, x) for l in range(3)], axis=-2)
    return -np.einsum("...l,...lb->...b", T[..., :, j], parts)


def table_residual(x) -> Tuple[float, int]:
    """Max deviation of ``2 * half_entry`` from the direct contraction.

    Covers all 7 x 6 entries; returns ``(max_residual, entries_checked)``.
    """
    x = as_unit(x)
    worst = 0.0
    count = 0
    for field in CANONICAL_FIELDS:
        for sign in ("+", "-"):
            for i in (1, 2, 3):
                direct = contract(field, p_form(sign, i, x), at=x)
                tabulated = CylOneForm(2.0 * half_entry(field, sign, i, x))
                worst = max(worst, float(np.max(np.abs((direct - tabulated).components))))
                count += 1
    return worst, count
