"""Exact-arithmetic toolkit for nilradicals of classical root systems."""

__version__ = "0.1.0"
