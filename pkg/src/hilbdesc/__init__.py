"""Exact K-theoretic descendent series of Hilbert schemes of points."""

__version__ = "0.1.0"
