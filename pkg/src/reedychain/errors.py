"""Exception types shared across the package."""


class ReedychainError(Exception):
    """Base class for package errors."""


class FieldMismatchError(ReedychainError):
    """Raised when objects over different primes p are combined."""


class SchemaError(ReedychainError):
    """Raised on malformed serialized input (CLI exit code 2)."""


class ResourceCapError(ReedychainError):
    """Raised when a matrix block or linear system exceeds the configured cap
    (CLI exit code 3)."""


class ValidationFailure(ReedychainError):
    """Raised when a structural validator finds a broken invariant."""


class InternalInvariantError(ReedychainError):
    """A cross-check between two independent computations disagreed.

    This always indicates an implementation bug, never bad user input.
    """
