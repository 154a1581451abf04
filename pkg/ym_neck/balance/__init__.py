"""Stress-energy, neck flux integrals and the balancing conditions."""

from .nogo import NoGoCertificate, NoGoOutcome, nogo_su2, pairing_matrix
from .pohozaev import (
    flux_table,
    pohozaev_closed_form,
    pohozaev_integral,
    pohozaev_integrand,
    synthetic_neck_field,
)
from .residuals import (
    SAMPLED_TOLERANCE,
    BalanceReport,
    BoundaryData,
    balance_residuals,
    load_boundary_data,
    one_instanton_boundary_data,
)
from .stress import StressTensor, divergence_stress, stress_components, stress_energy

__all__ = [
    "BalanceReport",
    "BoundaryData",
    "NoGoCertificate",
    "NoGoOutcome",
    "SAMPLED_TOLERANCE",
    "StressTensor",
    "balance_residuals",
    "divergence_stress",
    "flux_table",
    "load_boundary_data",
    "nogo_su2",
    "one_instanton_boundary_data",
    "pairing_matrix",
    "pohozaev_closed_form",
    "pohozaev_integral",
    "pohozaev_integrand",
    "stress_components",
    "stress_energy",
    "synthetic_neck_field",
]
