"""Skew monoidal structures from reflections, coreflections, warpings and comonads."""

__version__ = "0.1.0"
