"""Tests for sphere quadrature and cylinder grids."""

import numpy as np
import pytest

from ym_neck.core.errors import InputError, ResolutionError
from ym_neck.geometry.grid_io import format_grid, parse_grid, read_grid, write_grid
from ym_neck.geometry.quadrature import CylinderGrid, SphereGrid, build_sphere_grid
from ym_neck.geometry.s3 import SPHERE_VOLUME, transition_values


class TestBuildSphereGrid:
    """Test grid construction."""

    def test_gauss_volume(self, sphere_grid):
        """Test the weights sum to the volume of S^3."""
        assert sphere_grid.weights.sum() == pytest.approx(SPHERE_VOLUME, rel=1e-13)
        assert np.allclose(np.linalg.norm(sphere_grid.nodes, axis=1), 1.0)

    def test_gauss_integrates_quadratics(self, sphere_grid):
        """Test exact low-degree moments."""
        x = sphere_grid.nodes
        assert sphere_grid.integrate(x[:, 0]) == pytest.approx(0.0, abs=1e-13)
        assert sphere_grid.integrate(x[:, 1] ** 2) == pytest.approx(np.pi**2 / 2, rel=1e-12)
        assert sphere_grid.integrate(x[:, 0] * x[:, 3]) == pytest.approx(0.0, abs=1e-13)

    def test_transition_squares(self, sphere_grid):
        """Test each T_ij integrates to zero with square integral 2 pi^2 / 3."""
        T = transition_values(sphere_grid.nodes)
        assert np.allclose(sphere_grid.integrate(T), 0.0, atol=1e-12)
        assert np.allclose(sphere_grid.integrate(T**2), 2 * np.pi**2 / 3, rtol=1e-12)

    def test_montecarlo_layout(self):
        """Test the random layout is reproducible and equal-weight."""
        a = build_sphere_grid(5, layout="montecarlo", seed=4)
        b = build_sphere_grid(5, layout="montecarlo", seed=4)
        assert a.size == 4 * 5**3
        assert np.array_equal(a.nodes, b.nodes)
        assert np.allclose(a.weights, SPHERE_VOLUME / a.size)

    def test_below_threshold(self):
        """Test a too-coarse grid is a resolution error."""
        with pytest.raises(ResolutionError, match="quadrature below threshold"):
            build_sphere_grid(3)

    def test_unknown_layout(self):
        """Test an unknown layout is an input error."""
        with pytest.raises(InputError):
            build_sphere_grid(6, layout="lebedev")

    def test_integrate_shape_mismatch(self, small_grid):
        """Test integrating samples of the wrong length."""
        with pytest.raises(InputError):
            small_grid.integrate(np.ones(small_grid.size + 1))

    def test_negative_weights_rejected(self):
        """Test weights must be positive."""
        with pytest.raises(InputError):
            SphereGrid(nodes=np.array([[1.0, 0, 0, 0]]), weights=np.array([-1.0]))


class TestCylinderGrid:
    """Test products of slices with a sphere grid."""

    def test_points_are_scaled(self, small_grid):
        """Test ambient points are e^t times the sphere nodes."""
        cyl = CylinderGrid.uniform(-1.0, 1.0, 5, small_grid)
        assert cyl.shape == (5, small_grid.size)
        assert cyl.spacing == pytest.approx(0.5)
        assert np.allclose(cyl.points()[0], np.exp(-1.0) * small_grid.nodes)

    def test_slice_index(self, small_grid):
        """Test locating a slice."""
        cyl = CylinderGrid.uniform(-1.0, 1.0, 5, small_grid)
        assert cyl.slice_index(0.5) == 3
        with pytest.raises(InputError):
            cyl.slice_index(0.2)

    def test_non_increasing_rejected(self, small_grid):
        """Test slices must increase."""
        with pytest.raises(InputError):
            CylinderGrid(t=np.array([0.0, 0.0]), sphere=small_grid)

    def test_single_slice_has_no_spacing(self, small_grid):
        """Test the spacing of a single slice."""
        with pytest.raises(ResolutionError):
            _ = CylinderGrid(t=np.array([0.0]), sphere=small_grid).spacing


class TestGridIO:
    """Test the columnar grid file format."""

    def test_file_round_trip(self, tmp_path, small_grid):
        """Test writing and reading back a grid keeps nodes and layout."""
        path = tmp_path / "grid.txt"
        write_grid(small_grid, path)
        loaded = read_grid(path)
        assert loaded.layout == "gauss"
        assert loaded.resolution == small_grid.resolution
        assert np.array_equal(loaded.nodes, small_grid.nodes)
        assert np.array_equal(loaded.weights, small_grid.weights)

    def test_header(self, small_grid):
        """Test the header records the layout."""
        assert format_grid(small_grid).startswith("# ym-neck sphere grid layout=gauss")

    def test_bad_column_count(self):
        """Test rows need five columns."""
        with pytest.raises(InputError, match="Line 1"):
            parse_grid("1 0 0 0\n")

    def test_empty(self):
        """Test a file without nodes."""
        with pytest.raises(InputError):
            parse_grid("# nothing\n")

    def test_missing_file(self, tmp_path):
        """Test a missing file is an input error."""
        with pytest.raises(InputError):
            read_grid(tmp_path / "absent.txt")
