"""Pasting diagrams in bicategories: validation, recognition, extension and evaluation."""

__version__ = "1.0.0"
