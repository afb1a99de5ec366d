"""Bicategory models."""
