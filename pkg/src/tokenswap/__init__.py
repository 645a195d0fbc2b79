"""Token swapping: exact and approximate solvers, hardness gadgets and barrier instances."""

__version__ = "0.1.0"
