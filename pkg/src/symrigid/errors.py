"""Exception types shared across the package."""


class SymrigidError(Exception):
    """Base class for all package errors."""


class InputError(SymrigidError, ValueError):
    """Malformed input: bad file, invalid gain, inconsistent modes."""


class LimitExceeded(SymrigidError):
    """An exhaustive enumeration would exceed its configured cap."""
