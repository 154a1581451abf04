"""SD/ASD two-forms on R^4 and the cylinder forms P, Q with their contractions."""

from .cylinder import (
    CANONICAL_FIELDS,
    CylOneForm,
    CylPoint,
    CylTwoForm,
    ambient_frame,
    contract,
    contract_mod_dt,
    d_phi,
    p_form,
    pullback_pi,
    q_form,
    vector_field,
)
from .inversion import InversionReport, verify_inversion
from .r4 import Chart, TwoFormR4, phi_r4
from .table import half_entry, table_residual

__all__ = [
    "CANONICAL_FIELDS",
    "Chart",
    "CylOneForm",
    "CylPoint",
    "CylTwoForm",
    "InversionReport",
    "TwoFormR4",
    "ambient_frame",
    "contract",
    "contract_mod_dt",
    "d_phi",
    "half_entry",
    "p_form",
    "phi_r4",
    "pullback_pi",
    "q_form",
    "table_residual",
    "vector_field",
    "verify_inversion",
]
