"""Exception types shared by every module."""


class DomainError(ValueError):
    """An argument lies outside the region where the quantity is defined."""


class ConvergenceError(ArithmeticError):
    """A series failed to meet its stop rule within ``max_terms`` terms."""
