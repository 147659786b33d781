"""Maze exploration algorithms and exact verification of probabilistic depth-first search."""

__version__ = "0.1.0"
