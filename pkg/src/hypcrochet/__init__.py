"""Equilateral triangle tilings of the hyperbolic plane, their meshes, and crochet patterns for them."""

from .errors import BudgetError, DegenerateEdgeError, DomainError

__all__ = ["BudgetError", "DegenerateEdgeError", "DomainError"]
__version__ = "0.1.0"
