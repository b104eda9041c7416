"""Exact computations on Jacobian pairs."""
__version__ = "0.1.0"
