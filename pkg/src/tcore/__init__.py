"""Counting t-core partition k-tuples by closed formulas, eta quotients and brute force."""

__version__ = "0.1.0"
