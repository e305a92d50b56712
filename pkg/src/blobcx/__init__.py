"""Finite models of the one-dimensional blob complex over exact fields."""

__version__ = "0.1.0"
