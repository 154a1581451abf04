"""Checks on the cylinder two-forms, contractions and the inversion."""

from typing import Dict

import numpy as np

from ym_neck.forms.cylinder import (
    CANONICAL_FIELDS,
    CylPoint,
    contract_mod_dt,
    p_form,
    pullback_pi,
    q_form,
    stacked,
)
from ym_neck.forms.inversion import verify_inversion
from ym_neck.forms.r4 import phi_r4
from ym_neck.forms.table import table_residual
from ym_neck.geometry.s3 import transition_values
from ..base_check import CheckContext, IdentityCheck

PULLBACK_TIMES = (-1.0, 0.0, float(np.log(2.0)))


class CylinderFormsCheck(IdentityCheck):
    """Gram matrices of P, the transition ``Q_+ = T P_-`` and ``pi^* Phi = e^{2t} P / 2``."""

    def residuals(self, context: CheckContext) -> Dict[str, float]:
        x = context.grid.nodes
        result = {}
        for sign in ("+", "-"):
            P = stacked(p_form, sign, x)
            gram = np.einsum("niab,njab->nij", P, P) - 16.0 * np.eye(3)
            result[f"gram_{sign}"] = float(np.max(np.abs(gram)))
        T = transition_values(x)
        Q_plus = stacked(q_form, "+", x)
        expected = np.einsum("nij,njab->niab", T, stacked(p_form, "-", x))
        result["transition"] = float(np.max(np.abs(Q_plus - expected)))

        worst = 0.0
        for t in PULLBACK_TIMES:
            at = CylPoint.at(np.full(x.shape[0], t), x)
            for sign in ("+", "-"):
                for i in (1, 2, 3):
                    pulled = pullback_pi(phi_r4(sign, i), at)
                    scaled = 0.5 * np.exp(2.0 * t) * p_form(sign, i, at).components
                    worst = max(worst, float(np.max(np.abs(pulled.components - scaled))))
        result["pullback"] = worst
        return result


class ModDtCheck(IdentityCheck):
    """``iota_X P = iota_X Q`` modulo dt for every rotation field."""

    def residuals(self, context: CheckContext) -> Dict[str, float]:
        x = context.grid.nodes
        worst = 0.0
        for field in CANONICAL_FIELDS[1:]:
            for sign in ("+", "-"):
                for i in (1, 2, 3):
                    P = contract_mod_dt(field, p_form(sign, i, x), at=x)
                    Q = contract_mod_dt(field, q_form(sign, i, x), at=x)
                    worst = max(worst, float(np.max(np.abs((P - Q).components))))
        return {"mod_dt": worst}


class TableCheck(IdentityCheck):
    """Every contraction-table entry against the direct interior product."""

    def residuals(self, context: CheckContext) -> Dict[str, float]:
        residual, _ = table_residual(context.grid.nodes)
        return {"table": residual}


class InversionCheck(IdentityCheck):
    """The inversion pulls ``Phi_+`` back to ``|x|^-4 T Phi_-``."""

    def residuals(self, context: CheckContext) -> Dict[str, float]:
        report = verify_inversion(context.grid)
        return {
            "pullback": report.max_residual,
            "pole": report.pole_residual,
            "involution": report.involution_residual,
        }
