"""Exact certificates for syzygy bundle semistability in characteristic p."""

__version__ = "0.1.0"
