"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input violates a documented precondition or file format."""


class NumericalError(ArithmeticError):
    """A computation produced values inconsistent with its contract."""
