"""Exact verification that algebraic curvature forms are the SL(2)-invariants of a fourth exterior power."""

__version__ = "0.1.0"
