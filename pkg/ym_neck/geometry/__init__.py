"""Round S^3: frames, low eigenmodes, quadrature and sampled forms."""

from .form_field import FormField, FormKind, l2_inner
from .grid_io import format_grid, parse_grid, read_grid, write_grid
from .modes import (
    GAP_EIGENVALUE,
    ONE_FORM_MODES,
    SCALAR_MODES,
    ModeProjection,
    SphereMode,
    project_onto_modes,
    reconstruct,
)
from .quadrature import (
    QUADRATURE_MIN_RESOLUTION,
    CylinderGrid,
    SphereGrid,
    build_sphere_grid,
)
from .s3 import (
    PHI_MINUS,
    PHI_PLUS,
    SPHERE_VOLUME,
    CotangentVec,
    S3Point,
    TangentVec,
    TransitionMatrix,
    omega,
    phi,
    psi,
    t_matrix,
    x_field,
)

__all__ = [
    "CotangentVec",
    "CylinderGrid",
    "FormField",
    "FormKind",
    "GAP_EIGENVALUE",
    "ModeProjection",
    "ONE_FORM_MODES",
    "PHI_MINUS",
    "PHI_PLUS",
    "QUADRATURE_MIN_RESOLUTION",
    "S3Point",
    "SCALAR_MODES",
    "SPHERE_VOLUME",
    "SphereGrid",
    "SphereMode",
    "TangentVec",
    "TransitionMatrix",
    "build_sphere_grid",
    "format_grid",
    "l2_inner",
    "omega",
    "parse_grid",
    "phi",
    "project_onto_modes",
    "psi",
    "read_grid",
    "reconstruct",
    "t_matrix",
    "write_grid",
    "x_field",
]
