"""Shared exception types."""


class RegmapsError(Exception):
    """Base class for all library errors."""


class ParameterError(RegmapsError, ValueError):
    """An argument fails a documented precondition."""


class ContractError(RegmapsError):
    """An internal contract between modules is violated (e.g. a handle
    claimed to be normal is not)."""


class ResourceError(RegmapsError):
    """A configured budget (group order, search size, matrix size) was
    exceeded.  ``partial`` carries whatever was computed before giving up."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
