"""Exception types shared across the package."""


class CountingError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CountingError, ValueError):
    """An argument violates a documented precondition."""


class ProfileTooShortError(DomainError):
    """A field profile lacks the cyclotomic levels a computation needs."""


class MagnitudeError(CountingError):
    """A result or intermediate would exceed the configured size guard."""


class ConsistencyError(CountingError):
    """An internal exactness identity failed; indicates a bug, never bad input."""
