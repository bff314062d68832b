"""Generalized permutations, linear involutions and their Rauzy classes."""

__version__ = "0.1.0"
