"""Exception types shared across the toolkit.

The CLI maps these onto its exit-code contract: DataError -> 2,
ResourceCapError -> 3.
"""


class DataError(ValueError):
    """Malformed, inconsistent, or missing input data."""


class ResourceCapError(RuntimeError):
    """An exact computation was refused because it exceeds a configured cap."""
