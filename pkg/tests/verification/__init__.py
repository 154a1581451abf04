"""Tests for ym_neck.verification."""
