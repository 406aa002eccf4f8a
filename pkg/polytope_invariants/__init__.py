"""Polytope invariants of two-generator one-relator groups."""

from .version import __version__

__all__ = ["__version__"]
