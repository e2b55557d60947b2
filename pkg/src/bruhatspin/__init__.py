"""Bruhat cells of SO(n+1) and its spin cover, totally positive matrices and locally convex curves."""

__version__ = "0.1.0"
