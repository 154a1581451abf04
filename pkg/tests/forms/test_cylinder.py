"""Tests for the cylinder forms P and Q and their contractions."""

import math

import numpy as np
import pytest

from ym_neck.core.errors import InputError
from ym_neck.forms.cylinder import (
    CANONICAL_FIELDS,
    CylPoint,
    contract,
    contract_mod_dt,
    d_phi,
    p_form,
    pullback_pi,
    q_form,
    stacked,
    vector_field,
)
from ym_neck.forms.r4 import phi_r4
from ym_neck.forms.table import half_entry, table_residual
from ym_neck.geometry.s3 import transition_values


@pytest.fixture
def nodes(small_grid):
    return small_grid.nodes[::5]


class TestPQForms:
    """Test the cylinder two-forms."""

    @pytest.mark.parametrize("factory", [p_form, q_form])
    @pytest.mark.parametrize("sign", ["+", "-"])
    def test_gram(self, nodes, factory, sign):
        """Test <P_i, P_j> = 16 delta_ij in the tensor norm."""
        forms = stacked(factory, sign, nodes)
        gram = np.einsum("niab,njab->nij", forms, forms)
        assert np.allclose(gram, 16.0 * np.eye(3), atol=1e-10)

    def test_d_phi_minus(self, nodes):
        """Test d phi_{-,1} = -2 phi_{-,2} ^ phi_{-,3}."""
        dphi = d_phi("-", 1, nodes)
        assert np.allclose(dphi[:, 1, 2], -2.0)
        assert np.allclose(dphi[:, 2, 1], 2.0)
        assert np.allclose(dphi[:, 0, 1:], 0.0)

    def test_q_transition(self, nodes):
        """Test Q_{+,i} = T_ij P_{-,j}."""
        T = transition_values(nodes)
        q_plus = stacked(q_form, "+", nodes)
        p_minus = stacked(p_form, "-", nodes)
        assert np.allclose(q_plus, np.einsum("nij,njab->niab", T, p_minus), atol=1e-12)

    @pytest.mark.parametrize("t", [-1.0, 0.0, math.log(2.0)])
    def test_pullback(self, nodes, t):
        """Test 1/2 e^{2t} P_{+,i} is the pullback of Phi_{+,i}."""
        at = CylPoint.at(np.full(nodes.shape[0], t), nodes)
        for i in (1, 2, 3):
            pulled = pullback_pi(phi_r4("+", i), at)
            expected = 0.5 * math.exp(2 * t) * p_form("+", i, at)
            assert np.allclose(pulled.components, expected.components, atol=1e-12)

    def test_pullback_needs_x_chart(self, nodes):
        """Test y-chart forms cannot be pulled back by the cone map."""
        with pytest.raises(InputError):
            pullback_pi(phi_r4("+", 1, chart="y"), CylPoint.at(0.0, nodes[0]))


class TestContractions:
    """Test interior products with the canonical fields."""

    def test_table(self, nodes):
        """Test all tabulated entries against direct contraction."""
        residual, count = table_residual(nodes)
        assert count == len(CANONICAL_FIELDS) * 6
        assert residual < 1e-12

    def test_dt_into_p(self, nodes):
        """Test 1/2 iota_{d/dt} P_{-,2} = phi_{-,2}."""
        entry = half_entry("dt", "-", 2, nodes)
        assert np.allclose(entry[:, 0], 0.0)
        assert np.allclose(entry[:, 1:], [0.0, 1.0, 0.0])

    def test_mod_dt_drops_dt(self, nodes):
        """Test contracting X_{-,1} into P_{-,1} leaves nothing mod dt."""
        full = contract("X-1", p_form("-", 1, nodes), at=nodes)
        assert np.allclose(full.dt, -2.0)
        assert np.allclose(contract_mod_dt("X-1", p_form("-", 1, nodes), at=nodes).components, 0.0)

    def test_x_plus_components(self, nodes):
        """Test X_{+,j} in the minus frame is the row -T_j."""
        V = vector_field("X+2", nodes)
        assert np.allclose(V[:, 1:], -transition_values(nodes)[:, 1])

    def test_unknown_field(self, nodes):
        """Test unknown field names."""
        with pytest.raises(InputError):
            vector_field("Y+1", nodes)

    def test_named_field_needs_point(self, nodes):
        """Test a field name without a base point."""
        with pytest.raises(InputError):
            contract("dt", p_form("+", 1, nodes))
