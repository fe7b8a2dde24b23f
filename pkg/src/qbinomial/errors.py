"""Exception types shared across the package."""


class CapExceededError(ValueError):
    """An enumeration or table would exceed its configured size cap."""


class ZeroProbabilityError(ValueError):
    """Conditioning on an event that has probability zero."""


class ConsistencyError(AssertionError):
    """Two independent computations of the same quantity disagree."""
