"""Connections on R^4 charts and necks: curvature, gauge, decay and modes."""

from .connection import ConnectionForm, GaugeTransformation, commutator
from .curvature import BoundaryMatrices, CurvatureField, curvature, curvature_boundary_matrices
from .decay import DecayProfile, decay_profile
from .gauge import gauge_transform
from .instanton import (
    bpst_connection,
    bubble_connection,
    instanton_curvature_at_center,
    neck_connection,
)
from .modes import NeckExpansion, extract_neck_modes, fit_two_sided
from .sampling import GaugeField, NeckGeometry, sample_connection, to_cylinder
from .serialization import (
    expansion_from_dict,
    expansion_to_dict,
    gauge_field_from_dict,
    gauge_field_to_dict,
    load_gauge_field,
    save_gauge_field,
)

__all__ = [
    # Connections
    "ConnectionForm",
    "GaugeTransformation",
    "commutator",
    "bpst_connection",
    "bubble_connection",
    "neck_connection",
    "instanton_curvature_at_center",
    # Sampled fields
    "GaugeField",
    "NeckGeometry",
    "sample_connection",
    "to_cylinder",
    "gauge_transform",
    # Curvature
    "BoundaryMatrices",
    "CurvatureField",
    "curvature",
    "curvature_boundary_matrices",
    "DecayProfile",
    "decay_profile",
    # Neck expansion
    "NeckExpansion",
    "extract_neck_modes",
    "fit_two_sided",
    # Documents
    "expansion_from_dict",
    "expansion_to_dict",
    "gauge_field_from_dict",
    "gauge_field_to_dict",
    "load_gauge_field",
    "save_gauge_field",
]
