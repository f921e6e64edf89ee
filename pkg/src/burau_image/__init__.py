"""Exact computations around the image of the Burau representation of B3."""

__version__ = "0.1.0"
