"""Tests for sampling on the neck, mode extraction and the decay fit."""

import numpy as np
import pytest

from ym_neck.config.algebras import AlgebraRegistry
from ym_neck.core.errors import DegenerateFitError, InputError, OutOfBasisError, ResolutionError
from ym_neck.fields.connection import ConnectionForm
from ym_neck.fields.curvature import curvature
from ym_neck.fields.decay import decay_profile
from ym_neck.fields.instanton import bubble_connection
from ym_neck.fields.modes import extract_neck_modes, fit_two_sided
from ym_neck.fields.sampling import GaugeField, NeckGeometry, to_cylinder
from ym_neck.fields.serialization import (
    expansion_from_dict,
    expansion_to_dict,
    load_gauge_field,
    save_gauge_field,
)
from ym_neck.geometry.quadrature import build_sphere_grid

LAM = 1e-3
SU2 = AlgebraRegistry.SU2


@pytest.fixture(scope="module")
def geom():
    return NeckGeometry(lam=LAM, delta=LAM**0.25)


@pytest.fixture(scope="module")
def sphere():
    return build_sphere_grid(5)


@pytest.fixture(scope="module")
def bubble_field(geom, sphere):
    return to_cylinder(bubble_connection(LAM), geom, sphere=sphere, slices=41)


def unit_norms(coefficients):
    return np.sqrt(np.einsum("kij,kij->k", coefficients, coefficients) / SU2.trace_scale)


class TestNeckGeometry:
    """Test the neck interval."""

    def test_ends(self, geom):
        """Test the neck runs from log(lam/delta) to log(delta)."""
        assert geom.t_min == pytest.approx(np.log(LAM) - np.log(LAM**0.25))
        assert geom.t_max == pytest.approx(0.25 * np.log(LAM))
        assert geom.center == pytest.approx(0.5 * np.log(LAM))

    def test_eta_minimum(self, geom):
        """Test the two-sided weight is smallest at the centre."""
        assert geom.eta(geom.center) == pytest.approx(2 * np.sqrt(LAM))

    @pytest.mark.parametrize("lam,delta", [(0.0, 0.5), (0.3, 0.5), (1e-3, 1.5)])
    def test_invalid_scales(self, lam, delta):
        """Test scales without a neck are rejected."""
        with pytest.raises(InputError):
            NeckGeometry(lam=lam, delta=delta)


class TestToCylinder:
    """Test sampling connections on the neck."""

    def test_shapes(self, bubble_field, sphere):
        """Test the sampled component layout."""
        assert bubble_field.f.shape == (41, sphere.size, 4, 4)
        assert bubble_field.xi.shape == (41, sphere.size, 3, 4, 4)
        assert bubble_field.geometry.lam == LAM

    def test_annulus_not_covered(self, geom, sphere):
        """Test a chart that stops short of the neck."""
        A = bubble_connection(LAM)
        short = ConnectionForm(potential=A.potential, algebra=A.algebra, outer_radius=0.01)
        with pytest.raises(InputError, match="annulus not covered"):
            to_cylinder(short, geom, sphere=sphere)

    def test_needs_a_grid(self, geom):
        """Test sampling without any grid."""
        with pytest.raises(InputError):
            to_cylinder(bubble_connection(LAM), geom)


class TestExtractNeckModes:
    """Test the harmonic neck expansion."""

    def test_asd_bubble(self, bubble_field, geom):
        """Test the ASD bubble is carried by the decaying phi_- modes."""
        expansion = extract_neck_modes(bubble_field, geom)
        assert np.allclose(unit_norms(expansion.d_minus), 1.0, atol=0.1)
        for name in ("c_plus", "d_plus", "a_psi", "b_psi", "a_tilde", "b_tilde"):
            assert np.max(np.abs(expansion.coefficients()[name])) < 1e-8, name
        assert np.allclose(expansion.a, 0.0, atol=1e-12)

    def test_noisy_field(self, bubble_field, geom):
        """Test an off-table term and noise move the coefficients by O(eps) and show up in the remainder."""
        clean = extract_neck_modes(bubble_field, geom)
        x = bubble_field.grid.sphere.nodes
        rng = np.random.default_rng(11)
        noise = np.einsum("tnca,aij->tncij", rng.standard_normal(bubble_field.xi.shape[:3] + (3,)), SU2.basis)
        off_table = (x[:, 1] * x[:, 2])[None, :, None, None] * SU2.basis[0]

        def perturbed(eps):
            field = GaugeField(
                f=bubble_field.f + eps * off_table,
                xi=bubble_field.xi + eps * noise,
                grid=bubble_field.grid,
                algebra=SU2,
            )
            return extract_neck_modes(field, geom)

        eps = 1e-5
        small, large = perturbed(eps), perturbed(2 * eps)
        bound = 10 * eps / geom.delta**2
        for name, value in clean.coefficients().items():
            shift = small.coefficients()[name] - value
            assert np.max(np.abs(shift)) < bound, name
            assert np.allclose(large.coefficients()[name] - value, 2 * shift, rtol=1e-6, atol=1e-12), name
        assert np.allclose(unit_norms(small.d_minus), 1.0, atol=0.1)

        extra = small.remainder - clean.remainder
        extra_norm = np.sqrt(
            np.einsum("n,tncij,tncij->t", bubble_field.grid.sphere.weights, extra, extra) / SU2.trace_scale
        )
        assert np.all(extra_norm > 0.1 * eps)
        assert np.all(extra_norm < 500 * eps)
        assert np.all(small.remainder_norm > 0)

    def test_too_few_slices(self, geom, sphere):
        """Test the extraction needs eight slices."""
        field = to_cylinder(bubble_connection(LAM), geom, sphere=sphere, slices=5)
        with pytest.raises(ResolutionError, match="too few slices"):
            extract_neck_modes(field, geom)

    def test_expansion_document(self, bubble_field, geom):
        """Test the JSON document keeps every coefficient."""
        expansion = extract_neck_modes(bubble_field, geom)
        restored = expansion_from_dict(expansion_to_dict(expansion))
        for name, value in expansion.coefficients().items():
            assert np.array_equal(restored.coefficients()[name], value)

    def test_malformed_document(self):
        """Test a document without coefficients."""
        with pytest.raises(InputError):
            expansion_from_dict({"lambda": 1e-3})


class TestFitTwoSided:
    """Test the two-exponential regression."""

    def test_recovers_coefficients(self):
        """Test exact data is split exactly."""
        t = np.linspace(-5.0, -1.0, 20)
        log_lam = np.log(1e-3)
        data = 0.5 * np.exp(2 * t) - 3.0 * np.exp(-2 * (t - log_lam))
        assert np.allclose(fit_two_sided(t, data, 2.0, log_lam), [0.5, -3.0])

    def test_short_span(self):
        """Test slices spanning less than unit length."""
        with pytest.raises(DegenerateFitError, match="ill-conditioned"):
            fit_two_sided(np.linspace(0.0, 0.5, 10), np.ones(10), 2.0, -7.0)


class TestCurvatureAndDecay:
    """Test curvature of sampled fields and the decay envelope."""

    def test_bubble_decay(self, bubble_field, geom):
        """Test the bubble curvature decays like lam^2 e^-2t."""
        profile = decay_profile(curvature(bubble_field), geom)
        assert profile.c2 > 0
        assert profile.slope_bubble == pytest.approx(-2.0, abs=0.1)
        assert profile.max_residual < 0.1

    def test_sampled_curvature_matches_exact(self, bubble_field, tmp_path):
        """Test curvature from samples alone agrees with the evaluable source."""
        path = tmp_path / "field.json"
        save_gauge_field(bubble_field, path)
        loaded = load_gauge_field(path)
        assert loaded.source is None
        exact = curvature(bubble_field).W
        sampled = curvature(loaded).W
        assert np.max(np.abs(sampled - exact)) < 1e-3 * np.max(np.abs(exact))

    def test_out_of_basis(self, bubble_field):
        """Test sample-only data outside the mode table is refused."""
        x = bubble_field.grid.sphere.nodes
        f = np.array(bubble_field.f)
        f[:] = (x[:, 0] * x[:, 1])[None, :, None, None] * SU2.basis[0]
        field = GaugeField(f=f, xi=bubble_field.xi, grid=bubble_field.grid, algebra=SU2)
        with pytest.raises(OutOfBasisError):
            curvature(field)

    def test_zero_curvature(self, bubble_field, geom):
        """Test the decay fit refuses a flat connection."""
        zero = ConnectionForm.zero(SU2)
        flat = curvature(zero, grid=bubble_field.grid)
        with pytest.raises(DegenerateFitError):
            decay_profile(flat, geom)

    def test_load_missing_file(self, tmp_path):
        """Test reading a missing gauge field."""
        with pytest.raises(InputError):
            load_gauge_field(tmp_path / "absent.json")
