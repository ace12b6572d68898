"""Modular representation theory of small permutation groups over finite
fields: character tables, blocks, MeatAxe-style module computations and the
standard functors between groups and subgroups."""

__version__ = "0.1.0"
