"""Verification harness."""
