"""Discrete weighted Hoelder norms on the neck.

``||u||_X = sup_t ||u||_{C^order([t, t+1] x S^3)} * eta(t)^-alpha2`` with
``order`` and ``alpha2`` from ``SpectralGaps``. On a window the C^{k,beta}
norm is approximated by

* ``sum_{j<=k} sup |d_t^j u|`` (t-derivatives by fourth-order differences),
* the beta-quotient of ``d_t^k u`` over slice pairs with ``|dt| <= 1`` at a
  common node,
* the ``min(order, 1)``-quotient of ``u`` over k-nearest sphere neighbours
  on each slice.

Every term is bounded by the true norm, so the result is a lower bound of it.
"""

from __future__ import annotations

import logging
import math
from typing import Optional, Tuple, Union

import numpy as np
from scipy.spatial import cKDTree

from ym_neck.core.errors import InputError, ResolutionError
from ym_neck.fields.sampling import GaugeField, NeckGeometry
from ym_neck.geometry.flows import t_derivative, t_second_derivative
from ym_neck.geometry.form_field import FormField, FormKind
from .gaps import SpectralGaps, WeightedNormKind

LOGGER = logging.getLogger(__name__)

MIN_WINDOW_SLICES = 4
DEFAULT_NEIGHBOURS = 6
_WINDOW_PAD = 1e-9

NormInput = Union[FormField, GaugeField]


def _flat_samples(field: NormInput) -> Tuple[np.ndarray, np.ndarray, np.ndarray, float, bool]:
    """``(values (nt, N, V), t, nodes, trace scale, is one-form)``."""
    if isinstance(field, GaugeField):
        values = field.components
        nt, n_nodes = field.grid.shape
        return (
            values.reshape(nt, n_nodes, -1),
            field.grid.t,
            field.grid.sphere.nodes,
            field.algebra.trace_scale,
            True,
        )
    if not field.is_cylinder:
        raise InputError("Weighted norms need a field sampled on t-slices")
    scale = field.algebra.trace_scale if field.algebra is not None else 1.0
    values = field.values.reshape(field.t.size, field.grid.size, -1)
    return values, field.t, field.grid.nodes, scale, field.kind is not FormKind.FUNCTION


def _pointwise(values: np.ndarray, scale: float) -> np.ndarray:
    return np.sqrt(np.sum(values * values, axis=-1) / scale)


def sphere_pairs(nodes: np.ndarray, neighbours: int = DEFAULT_NEIGHBOURS) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nearest-neighbour node pairs and their geodesic distances."""
    k = min(neighbours + 1, nodes.shape[0])
    chord, index = cKDTree(nodes).query(nodes, k=k)
    first = np.repeat(np.arange(nodes.shape[0]), k - 1)
    second = index[:, 1:].reshape(-1)
    distance = 2.0 * np.arcsin(np.clip(chord[:, 1:].reshape(-1) / 2.0, 0.0, 1.0))
    keep = distance > 1e-12
    return first[keep], second[keep], distance[keep]


def _sphere_quotient(values: np.ndarray, pairs, exponent: float, scale: float) -> np.ndarray:
    """Largest ``|u(p) - u(q)| / d(p, q)^exponent`` over ``pairs``, per leading index."""
    first, second, distance = pairs
    if first.size == 0:
        return np.zeros(values.shape[:-2])
    diff = _pointwise(values[..., first, :] - values[..., second, :], scale)
    return np.max(diff / distance**exponent, axis=-1)


def slice_holder_norm(
    values: np.ndarray,
    nodes: np.ndarray,
    order: float,
    scale: float = 1.0,
    neighbours: int = DEFAULT_NEIGHBOURS,
) -> float:
    """Discrete ``C^order(S^3)`` norm of one slice of samples ``(N, ...)``."""
    flat = np.asarray(values, dtype=float).reshape(nodes.shape[0], -1)
    sup = float(np.max(_pointwise(flat, scale), initial=0.0))
    quotient = float(_sphere_quotient(flat, sphere_pairs(nodes, neighbours), min(order, 1.0), scale))
    return sup + quotient


def window_norms(
    field: NormInput,
    order: float,
    neighbours: int = DEFAULT_NEIGHBOURS,
) -> Tuple[np.ndarray, np.ndarray]:
    """Discrete ``C^order`` norms on the unit windows ``[t_i, t_i + 1] x S^3``.

    Returns the window starts and one norm per window.

    Raises:
        ResolutionError: if a window holds fewer than four slices
    """
    values, t, nodes, scale, _ = _flat_samples(field)
    nt = t.size
    if nt < 2 or t[-1] - t[0] < 1.0 - _WINDOW_PAD:
        raise ResolutionError("too few samples per window: the grid spans less than one unit in t")
    h = float(np.diff(t)[0])
    if np.max(np.abs(np.diff(t) - h)) > 1e-9 * max(1.0, h):
        raise InputError("Weighted norms need uniformly spaced slices")
    per_window = int(math.floor(1.0 / h + _WINDOW_PAD)) + 1
    if per_window < MIN_WINDOW_SLICES:
        raise ResolutionError(
            f"too few samples per window: {per_window} slices per unit, need {MIN_WINDOW_SLICES}"
        )

    k = min(int(math.floor(order)), 2)
    beta = order - k
    derivatives = [values]
    if k >= 1:
        derivatives.append(t_derivative(values, h, axis=0))
    if k >= 2:
        derivatives.append(t_second_derivative(values, h, axis=0))
    sups = np.stack([np.max(_pointwise(d, scale), axis=1) for d in derivatives])  # (k+1, nt)

    top = derivatives[-1]
    lags = range(1, per_window)
    t_quotients = {
        lag: np.max(_pointwise(top[lag:] - top[:-lag], scale), axis=1) / (lag * h) ** beta
        for lag in lags
    }
    s_quotient = _sphere_quotient(values, sphere_pairs(nodes, neighbours), min(order, 1.0), scale)

    starts = np.flatnonzero(t + 1.0 <= t[-1] + _WINDOW_PAD)
    norms = np.empty(starts.size)
    for position, i in enumerate(starts):
        end = i + per_window
        seminorm = max(
            max((float(np.max(t_quotients[lag][i : end - lag])) for lag in lags), default=0.0),
            float(np.max(s_quotient[i:end])),
        )
        norms[position] = float(np.sum(np.max(sups[:, i:end], axis=1))) + seminorm
    return t[starts], norms


def weighted_norm(
    field: NormInput,
    kind: Union[WeightedNormKind, str],
    geom: Optional[NeckGeometry] = None,
    gaps: Optional[SpectralGaps] = None,
    neighbours: int = DEFAULT_NEIGHBOURS,
) -> float:
    """``sup_t ||field||_{C^order(window at t)} * eta(t)^-alpha2`` over the sampled windows.

    Raises:
        InputError: if the field degree does not match ``kind`` or no
            geometry is known
        ResolutionError: with too few samples per window
    """
    kind = WeightedNormKind.parse(kind)
    gaps = gaps or SpectralGaps()
    _, _, _, _, one_form = _flat_samples(field)
    if one_form != (kind is WeightedNormKind.X2):
        expected = "one-forms" if kind is WeightedNormKind.X2 else "functions"
        raise InputError(f"degree mismatch: the {kind.name} norm measures {expected}")
    if geom is None:
        geom = field.geometry if isinstance(field, GaugeField) else None
    if geom is None:
        raise InputError("Weighted norms need the neck geometry (lambda, delta)")

    order, weight = gaps.norm_exponents(kind)
    starts, norms = window_norms(field, order, neighbours)
    weighted = norms * geom.eta(starts) ** (-weight)
    value = float(np.max(weighted, initial=0.0))
    LOGGER.debug("%s norm over %d windows: %.6g", kind.name, starts.size, value)
    return value
