"""Exact-arithmetic workbench for LP formulations, slack matrices, and reductions."""

__version__ = "0.1.0"
