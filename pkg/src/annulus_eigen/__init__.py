"""Clamped eigenvalue problems for weighted fourth-order operators on annuli."""

__version__ = "0.1.0"
