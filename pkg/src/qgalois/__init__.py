"""Galois groups of the basic hypergeometric q-difference equation."""

__version__ = "0.1.0"
