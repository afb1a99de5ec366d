"""Evaluation of pasting diagrams."""
