"""Exact computations for the grasshopper problem with signed jumps."""
__version__ = "0.1.0"
