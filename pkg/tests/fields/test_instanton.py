"""Tests for the instanton family, curvature and gauge transformations."""

import numpy as np
import pytest

from ym_neck.config.algebras import AlgebraRegistry
from ym_neck.core.errors import InputError
from ym_neck.fields.connection import ConnectionForm, GaugeTransformation
from ym_neck.fields.curvature import curvature_boundary_matrices
from ym_neck.fields.gauge import gauge_transform
from ym_neck.fields.instanton import (
    bpst_connection,
    bubble_connection,
    instanton_curvature_at_center,
    neck_connection,
)
from ym_neck.forms.r4 import coefficient_star
from ym_neck.geometry.s3 import PHI_MINUS, PHI_PLUS

SU2 = AlgebraRegistry.SU2


def energy_density(F):
    return float(np.einsum("mnij,mnij->", F, F) / SU2.trace_scale)


@pytest.fixture
def points():
    rng = np.random.default_rng(5)
    return rng.standard_normal((20, 4))


class TestBpstConnection:
    """Test the charge-one instanton."""

    @pytest.mark.parametrize("orientation", ["asd", "sd"])
    def test_center_curvature(self, orientation):
        """Test the exact curvature at the centre matches the closed form."""
        A = bpst_connection(orientation=orientation)
        F = A.curvature(np.zeros(4))
        assert np.allclose(F, instanton_curvature_at_center(orientation), atol=1e-12)
        assert energy_density(F) == pytest.approx(48.0)

    @pytest.mark.parametrize("orientation,sign", [("asd", -1.0), ("sd", 1.0)])
    def test_duality(self, points, orientation, sign):
        """Test the curvature is (anti-)self-dual everywhere."""
        F = bpst_connection(orientation=orientation).curvature(points)
        F = np.moveaxis(F, (1, 2), (-2, -1))  # (..., n, n, 4, 4)
        assert np.allclose(coefficient_star(F), sign * F, atol=1e-12)

    def test_exact_jacobian_matches_differences(self, points):
        """Test the closed-form derivatives against ambient differences."""
        exact = bpst_connection(center=(0.1, 0.0, -0.2, 0.3), scale=0.7)
        numeric = ConnectionForm(potential=exact.potential, algebra=exact.algebra)
        assert np.allclose(exact.derivatives(points), numeric.derivatives(points), atol=1e-7)

    def test_scale_must_be_positive(self):
        """Test a nonpositive scale is rejected."""
        with pytest.raises(InputError):
            bpst_connection(scale=0.0)

    def test_unknown_orientation(self):
        """Test an unknown orientation name."""
        with pytest.raises(InputError):
            bpst_connection(orientation="both")

    def test_algebra_without_structure(self):
        """Test algebras without a suitable basis are rejected."""
        with pytest.raises(InputError):
            bpst_connection(algebra=AlgebraRegistry.generic(2))


class TestBoundaryMatrices:
    """Test the SD/ASD split of the curvature at a chart origin."""

    def test_asd_instanton(self):
        """Test the ASD instanton has unit ASD coefficients and no SD part."""
        matrices = curvature_boundary_matrices(bpst_connection(orientation="asd"))
        assert np.allclose(matrices.plus, 0.0, atol=1e-12)
        norms = np.sqrt(np.einsum("kij,kij->k", matrices.minus, matrices.minus) / 4.0)
        assert np.allclose(norms, 1.0)

    def test_sd_center_against_phi_plus(self):
        """Test the SD centre curvature is 2 sum Phi_{+,i} (-q_i), the opposite sign of the ASD form."""
        F = bpst_connection(orientation="sd").curvature(np.zeros(4))
        expected = 2.0 * np.einsum("imn,ijk->mnjk", PHI_PLUS, -SU2.basis)
        assert np.allclose(F, expected, atol=1e-12)
        same_sign = 2.0 * np.einsum("imn,ijk->mnjk", PHI_PLUS, SU2.basis)
        assert not np.allclose(F, same_sign, atol=1e-3)
        asd = bpst_connection(orientation="asd").curvature(np.zeros(4))
        assert np.allclose(asd, 2.0 * np.einsum("imn,ijk->mnjk", PHI_MINUS, SU2.basis), atol=1e-12)

    def test_sd_instanton(self):
        """Test the SD instanton has F_{+,i} = -q_i and no ASD part."""
        matrices = curvature_boundary_matrices(bpst_connection(orientation="sd"))
        assert np.allclose(matrices.minus, 0.0, atol=1e-12)
        assert np.allclose(matrices.plus, -SU2.basis, atol=1e-12)

    def test_two_form_brackets(self):
        """Test each triple brackets opposite to the su(2) triple paired with it."""

        def bracket(a, b):
            return a @ b - b @ a

        q = SU2.basis
        assert np.allclose(bracket(q[0], q[1]), 2.0 * q[2])
        assert np.allclose(bracket(PHI_MINUS[0], PHI_MINUS[1]), 2.0 * PHI_MINUS[2])
        assert np.allclose(bracket(PHI_PLUS[0], PHI_PLUS[1]), -2.0 * PHI_PLUS[2])
        assert np.allclose(bracket(-q[0], -q[1]), -2.0 * -q[2])

    def test_bubble_chart_swaps(self):
        """Test the y-chart swaps the roles of the two triples."""
        F = instanton_curvature_at_center("asd")
        x_chart = curvature_boundary_matrices(F, chart="x")
        y_chart = curvature_boundary_matrices(F, chart="y")
        assert np.allclose(y_chart.plus, x_chart.minus)
        assert np.allclose(y_chart.minus, x_chart.plus)

    def test_bad_shape(self):
        """Test curvature arrays need two form indices."""
        with pytest.raises(InputError):
            curvature_boundary_matrices(np.zeros((3, 3, 2, 2)))


class TestBubbleConnection:
    """Test the bubble seen through the neck."""

    def test_neck_components(self, points):
        """Test A(d/dt) = 0 and A(X_{-,j}) = u/(1+u) q_j with u = lam^2 e^-2t."""
        lam = 1e-2
        comps = bubble_connection(lam).cylinder_components(points)
        r2 = np.sum(points * points, axis=-1)
        u = lam**2 / r2
        expected = (u / (1 + u))[:, None, None, None] * SU2.basis[None]
        assert np.allclose(comps[:, 0], 0.0, atol=1e-14)
        assert np.allclose(comps[:, 1:], expected, atol=1e-14)

    def test_exact_jacobian_matches_differences(self, points):
        """Test the chained derivatives against ambient differences."""
        exact = bubble_connection(0.3, orientation="sd")
        numeric = ConnectionForm(potential=exact.potential, algebra=exact.algebra)
        assert np.allclose(exact.derivatives(points), numeric.derivatives(points), atol=1e-6)

    def test_nonpositive_scale(self):
        """Test lambda must be positive."""
        with pytest.raises(InputError):
            bubble_connection(0.0)

    def test_neck_connection_with_body(self, points):
        """Test adding a body instanton keeps exact derivatives."""
        A = neck_connection(1e-3, body_orientation="asd")
        assert A.is_exact
        assert "bubble" in A.label and "bpst" in A.label


class TestGauge:
    """Test gauge covariance."""

    def test_curvature_is_conjugated(self, points):
        """Test F transforms as s^-1 F s under a constant gauge."""
        s = GaugeTransformation.exp(0.4 * SU2.basis[0] + 0.1 * SU2.basis[2])
        A = bpst_connection(scale=0.8)
        transformed = gauge_transform(A, s)
        g = s(points)[0]
        expected = g.T @ A.curvature(points) @ g
        assert np.allclose(transformed.curvature(points), expected, atol=1e-5)

    def test_non_orthogonal_rejected(self, points):
        """Test group-valued fields must be orthogonal."""
        s = GaugeTransformation(value=lambda p: np.broadcast_to(2.0 * np.eye(2), p.shape[:-1] + (2, 2)))
        with pytest.raises(InputError, match="non-orthogonal"):
            s(points)
