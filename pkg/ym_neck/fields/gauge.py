"""Gauge transformations of evaluable and sampled connections."""

from __future__ import annotations

from typing import Union

import numpy as np

from ym_neck.forms.cylinder import ambient_frame
from .connection import ConnectionForm, GaugeTransformation, gauge_transform_connection
from .sampling import GaugeField


def gauge_transform(
    A: Union[ConnectionForm, GaugeField], s: GaugeTransformation
) -> Union[ConnectionForm, GaugeField]:
    """``A' = s^-1 ds + s^-1 A s``.

    Evaluable connections return an evaluable connection. Sampled fields
    are transformed on their own grid with ``ds`` evaluated along the
    cylinder frame; the source, if any, is transformed alongside.

    Raises:
        InputError: if ``s`` has non-orthogonal samples
    """
    if isinstance(A, ConnectionForm):
        return gauge_transform_connection(A, s)
    points = A.grid.points()
    g = s(points)  # (nt, N, n, n), checked orthogonal
    g_inv = np.swapaxes(g, -1, -2)[:, :, None]
    ds = s.derivatives(points)  # ambient (nt, N, 4, n, n)
    E = ambient_frame(points)
    ds_frame = np.einsum("tnam,tnmij->tnaij", E, ds)
    components = g_inv @ ds_frame + g_inv @ A.components @ g[:, :, None]
    source = gauge_transform_connection(A.source, s) if A.source is not None else None
    return A.with_components(components, source=source)
