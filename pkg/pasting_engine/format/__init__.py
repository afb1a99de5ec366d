"""The .paste document format."""
