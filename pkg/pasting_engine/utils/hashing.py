"""Hashing utilities for diagram fingerprints."""
import hashlib


def fingerprint(text: str) -> str:
    """SHA256 of a diagram encoding, used to match failures across runs."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
