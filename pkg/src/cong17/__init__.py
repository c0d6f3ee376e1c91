"""Exact verification tools for a pair of 17-congruent elliptic curves and the
surfaces parametrizing such pairs."""

__version__ = "0.1.0"
