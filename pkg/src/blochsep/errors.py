"""Exception hierarchy shared by every module."""


class BlochSepError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(BlochSepError, ValueError):
    """Matrix shape does not agree with the declared party dimensions."""


class DomainError(BlochSepError, ValueError):
    """An argument lies outside the domain of an operation."""


class ResourceLimitError(BlochSepError):
    """A computation would exceed a configured size cap."""


class NumericalError(BlochSepError, ArithmeticError):
    """A numerical kernel failed (e.g. SVD did not converge)."""


class UnsupportedConfigurationError(BlochSepError):
    """No criterion covers the requested party count / dimensions."""

    def __init__(self, message, skipped=()):
        super().__init__(message)
        self.skipped = list(skipped)
