"""Tests for the error hierarchy and its exit codes."""

import pytest

from ym_neck.core.errors import (
    DegenerateFitError,
    InputError,
    NotHarmonicError,
    OutOfBasisError,
    ResolutionError,
    ResonanceError,
    YmNeckError,
)


class TestErrors:
    """Test exit codes and builtin compatibility."""

    @pytest.mark.parametrize(
        "error_class, code",
        [
            (YmNeckError, 1),
            (InputError, 4),
            (ResonanceError, 4),
            (OutOfBasisError, 4),
            (NotHarmonicError, 4),
            (DegenerateFitError, 4),
            (ResolutionError, 3),
        ],
    )
    def test_exit_codes(self, error_class, code):
        """Test each error maps to its exit code."""
        assert error_class("boom").exit_code == code

    def test_value_error_compatible(self):
        """Test input-like errors are ValueErrors."""
        for error_class in (InputError, ResolutionError, DegenerateFitError):
            assert issubclass(error_class, ValueError)
            assert issubclass(error_class, YmNeckError)

    def test_payloads(self):
        """Test errors carry their measured quantities."""
        assert OutOfBasisError("outside", fraction=0.25).fraction == 0.25
        assert NotHarmonicError("not harmonic", residual=4.0).residual == 4.0
        assert OutOfBasisError("outside").fraction is None
        assert str(ResonanceError("resonance: alpha")) == "resonance: alpha"
