"""Tests for boundary data, the balancing residuals and the no-go certificate."""

import json
from pathlib import Path

import numpy as np
import pytest
from scipy.stats import special_ortho_group

import ym_neck
from ym_neck.balance.nogo import NoGoOutcome, nogo_su2, pairing_matrix
from ym_neck.balance.residuals import (
    BoundaryData,
    balance_residuals,
    load_boundary_data,
    one_instanton_boundary_data,
)
from ym_neck.config.algebras import AlgebraRegistry
from ym_neck.core.errors import InputError

SU2 = AlgebraRegistry.SU2
DATA = Path(ym_neck.__file__).parent / "data"

def random_data(seed=0):
    rng = np.random.default_rng(seed)
    triples = [np.einsum("ik,kab->iab", rng.standard_normal((3, 3)), SU2.basis) for _ in range(4)]
    return BoundaryData(*triples, algebra=SU2)

class TestBoundaryData:
    """Test parsing and transforming boundary data."""
    def test_bundled_files(self):
        """Test the bundled example files load."""
        one = load_boundary_data(DATA / "one_instanton.json")
        assert one.algebra is SU2
        assert np.allclose(one.FL_minus, SU2.basis)
        assert load_boundary_data(DATA / "asd_asd.json").algebra is SU2

    def test_round_trip_document(self):
        """Test to_dict and from_dict agree."""
        data = random_data()
        restored = BoundaryData.from_dict(data.to_dict())
        assert np.array_equal(restored.FR_plus, data.FR_plus)

    def test_missing_key(self):
        """Test every boundary triple is required."""
        with pytest.raises(InputError, match="FR_minus"):
            BoundaryData.from_dict({"FL_plus": [], "FL_minus": [], "FR_plus": []})
    def test_mixed_sizes(self):
        """Test all matrices must share a size."""
        doc = {
            "FL_plus": np.zeros((3, 4, 4)).tolist(),
            "FL_minus": np.zeros((3, 4, 4)).tolist(),
            "FR_plus": np.zeros((3, 3, 3)).tolist(),
            "FR_minus": np.zeros((3, 4, 4)).tolist(),
        }
        with pytest.raises(InputError, match="dimension mismatch"):
            BoundaryData.from_dict(doc)

    def test_algebra_size_mismatch(self):
        """Test the named algebra must match the matrices."""
        doc = one_instanton_boundary_data().to_dict()
        doc["algebra"] = "so3"
        with pytest.raises(InputError):
            BoundaryData.from_dict(doc)
    def test_malformed_json(self, tmp_path):
        """Test unreadable files are input errors."""
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(InputError, match="Cannot read"):
            load_boundary_data(path)

    def test_wrong_triple_shape(self):
        """Test a triple needs three square matrices."""
        with pytest.raises(InputError):
            BoundaryData(np.zeros((2, 4, 4)), np.zeros((3, 4, 4)), np.zeros((3, 4, 4)), np.zeros((3, 4, 4)))

class TestBalanceResiduals:
    """Test the seven balancing residuals."""
    def test_one_instanton_unbalanced(self):
        """Test the opposite-orientation pairing leaves trace residual 3."""
        report = balance_residuals(one_instanton_boundary_data())
        assert report.trace_residual == pytest.approx(3.0)
        assert np.allclose(report.antisym_residuals, 0.0)
        assert report.trace_normalized == pytest.approx(3.0 / 4.0)
        assert report.passed is False
    def test_asd_asd_balanced(self):
        """Test same-orientation bubbles balance."""
        report = balance_residuals(load_boundary_data(DATA / "asd_asd.json"))
        assert report.passed is True
        assert report.max_residual == 0.0
    def test_zero_data(self):
        """Test zero data is trivially balanced."""
        assert balance_residuals(BoundaryData.zeros()).passed
    def test_labels(self):
        """Test residual names in report order."""
        report = balance_residuals(random_data())
        assert list(report.residuals()) == [
            "P1(2,3)",
            "P1(3,1)",
            "P1(1,2)",
            "P2(2,3)",
            "P2(3,1)",
            "P2(1,2)",
            "trace",
        ]
        assert len(report.rows()) == 7
    def test_conjugation_invariance(self):
        """Test a global orthogonal conjugation leaves every residual unchanged."""
        data = random_data(3)
        s = special_ortho_group.rvs(4, random_state=3)
        before = balance_residuals(data).residuals()
        after = balance_residuals(data.conjugated(s)).residuals()
        for key, value in before.items():
            assert after[key] == pytest.approx(value, abs=1e-12)

    def test_normalization(self):
        """Test normalized residuals divide by 1 + |F^L| |F^R|."""
        data = random_data(5)
        report = balance_residuals(data)
        scale = 1.0 + data.left_norm * data.right_norm
        assert report.trace_normalized == pytest.approx(report.trace_residual / scale)
    def test_scaling_right_side(self):
        """Test raw residuals are linear in the bubble data."""
        data = random_data(7)
        base = balance_residuals(data).trace_residual
        assert balance_residuals(data.scaled_right(2.0)).trace_residual == pytest.approx(2.0 * base)

class TestNoGo:
    """Test the SU(2) no-go certificate."""
    def test_one_instanton_obstructed(self):
        """Test the built-in pairing is obstructed with odd eigenvalue sum."""
        certificate = nogo_su2(one_instanton_boundary_data())
        assert certificate.outcome is NoGoOutcome.OBSTRUCTED
        assert certificate.obstructed
        assert certificate.trace == pytest.approx(3.0)
        assert certificate.eigenvalue_signs == (1, 1, 1)
        assert sum(certificate.eigenvalue_signs) % 2 == 1

    def test_rotated_bubble_still_obstructed(self):
        """Test rotating the bubble basis keeps the obstruction."""
        data = one_instanton_boundary_data()
        R = special_ortho_group.rvs(3, random_state=1)
        rotated = BoundaryData(
            data.FL_plus,
            data.FL_minus,
            np.einsum("ij,jab->iab", R, data.FR_plus),
            data.FR_minus,
        )
        certificate = nogo_su2(rotated)
        assert certificate.obstructed
        assert np.allclose(pairing_matrix(rotated), R.T)

    def test_zero_pairing(self):
        """Test vanishing pairing gives no obstruction."""
        certificate = nogo_su2(BoundaryData.zeros())
        assert certificate.outcome is NoGoOutcome.NO_OBSTRUCTION
        assert certificate.obstructed is False

    def test_non_orthogonal_pairing(self):
        """Test a pairing that is not an orthogonal multiple is inconclusive."""
        data = one_instanton_boundary_data()
        skewed = BoundaryData(
            data.FL_plus,
            data.FL_minus * np.array([1.0, 2.0, 1.0])[:, None, None],
            data.FR_plus,
            data.FR_minus,
        )
        assert nogo_su2(skewed).outcome is NoGoOutcome.INCONCLUSIVE
    def test_needs_three_dimensional_algebra(self):
        """Test the certificate refuses other algebras."""
        data = BoundaryData.zeros(AlgebraRegistry.generic(2))
        with pytest.raises(InputError):
            nogo_su2(data)
    def test_certificate_document(self):
        """Test the JSON document of a certificate."""
        document = nogo_su2(one_instanton_boundary_data()).to_dict()
        assert document["outcome"] == "obstructed"
        assert json.loads(json.dumps(document))["eigenvalue_signs"] == [1, 1, 1]
