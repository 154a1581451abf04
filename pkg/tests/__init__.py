"""Test suite for ym-neck."""
