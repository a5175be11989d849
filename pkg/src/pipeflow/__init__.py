"""Numerical verification toolkit for intermittent pipe-flow constructions."""

__version__ = "0.1.0"
