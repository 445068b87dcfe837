"""Finite-scale workbench for limit sketches, net topology and dualities."""

__version__ = "0.1.0"
