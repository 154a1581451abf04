"""Tests for ym_neck.fields."""
