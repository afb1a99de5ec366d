"""Anchored graphs, bracketings and composition schemes."""
