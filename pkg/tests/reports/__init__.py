"""Tests for ym_neck.reports."""
