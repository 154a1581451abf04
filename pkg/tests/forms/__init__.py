"""Tests for ym_neck.forms."""
