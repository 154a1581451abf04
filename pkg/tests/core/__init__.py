"""Tests for the core utilities."""
