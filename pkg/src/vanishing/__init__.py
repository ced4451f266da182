"""Finite groups, the vanishing-off subgroup and its central series."""

__version__ = "0.1.0"
