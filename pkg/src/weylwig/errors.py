"""Exception types raised by the library."""


class SupportError(ValueError):
    """A state or operator does not fit inside the grid window."""


class ValidationError(ValueError):
    """A kernel failed a density-operator validation check."""
