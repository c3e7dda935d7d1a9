"""Combinatorics of shadows: encoding graphs, regions, complexity and obstructions."""

__version__ = "0.1.0"
