"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested construction."""


class BudgetError(RuntimeError):
    """A construction would exceed its configured resource budget."""


class DegenerateEdgeError(ArithmeticError):
    """Two endpoints of a mesh edge coincide, so the edge direction is undefined."""
