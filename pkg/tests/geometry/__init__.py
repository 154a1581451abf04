"""Tests for ym_neck.geometry."""
