"""Gorenstein duality calculator for graded-commutative algebras over prime fields."""

__version__ = "0.1.0"

ALGO_VERSION = 1  # bump to invalidate cached resolution artifacts
