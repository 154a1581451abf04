"""Tests for ym_neck.spectral."""
