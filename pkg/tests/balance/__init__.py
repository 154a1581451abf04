"""Tests for ym_neck.balance."""
