"""Tests for constant two-forms on R^4 and the inversion pullback."""

import numpy as np
import pytest

from ym_neck.core.errors import InputError
from ym_neck.forms.inversion import inversion, inversion_jacobian, verify_inversion
from ym_neck.forms.r4 import Chart, TwoFormR4, coefficient_star, phi_r4


class TestTwoFormR4:
    """Test the constant two-form type."""

    @pytest.mark.parametrize("sign,eigenvalue", [("+", 1.0), ("-", -1.0)])
    def test_star_eigenvalue(self, sign, eigenvalue):
        """Test Phi_{+} is self-dual and Phi_{-} anti-self-dual in the x-chart."""
        for i in (1, 2, 3):
            form = phi_r4(sign, i)
            assert np.allclose(form.star().F, eigenvalue * form.F)

    def test_y_chart_reverses_orientation(self):
        """Test a self-dual coefficient array is anti-self-dual in the y-chart."""
        form = phi_r4("+", 1, chart="y")
        assert np.allclose(form.star().F, -form.F)
        assert np.allclose(form.self_dual_part().F, 0.0)

    def test_norm(self):
        """Test every basis form has tensor norm 2."""
        assert phi_r4("-", 2).norm() == pytest.approx(2.0)

    def test_parts_sum(self):
        """Test the SD and ASD parts recombine."""
        form = phi_r4("+", 1) + phi_r4("-", 3)
        assert np.allclose((form.self_dual_part() + form.anti_self_dual_part()).F, form.F)
        assert np.allclose(form.self_dual_part().F, phi_r4("+", 1).F)

    def test_star_is_involution(self):
        """Test ** = 1 on two-forms in four dimensions."""
        F = np.random.default_rng(1).standard_normal((4, 4))
        F = F - F.T
        assert np.allclose(coefficient_star(coefficient_star(F)), F)

    def test_not_antisymmetric(self):
        """Test symmetric coefficients are rejected."""
        with pytest.raises(InputError):
            TwoFormR4(np.eye(4))

    def test_mixed_charts(self):
        """Test forms in different charts cannot be added."""
        with pytest.raises(InputError):
            phi_r4("+", 1) + phi_r4("+", 1, chart=Chart.Y)

    def test_bad_chart(self):
        """Test an unknown chart name."""
        with pytest.raises(InputError):
            Chart.parse("z")


class TestInversion:
    """Test the inversion map."""

    def test_inversion_is_involution(self):
        """Test r(r(x)) = x."""
        x = np.array([0.3, -1.2, 0.5, 2.0])
        assert np.allclose(inversion(inversion(x)), x)

    def test_jacobian_matches_differences(self):
        """Test the closed-form Jacobian against central differences."""
        x = np.array([0.3, -1.2, 0.5, 2.0])
        h = 1e-6
        numeric = np.stack(
            [(inversion(x + h * e) - inversion(x - h * e)) / (2 * h) for e in np.eye(4)], axis=1
        )
        assert np.allclose(inversion_jacobian(x), numeric, atol=1e-8)

    def test_plus_pulls_back_to_minus(self, small_grid):
        """Test the inversion turns Phi_+ into |x|^-4 T Phi_-."""
        report = verify_inversion(small_grid)
        assert report.passed(1e-10)
        assert report.points == 3 * small_grid.size
