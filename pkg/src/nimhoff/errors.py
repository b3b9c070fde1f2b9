"""Exception types shared across the package."""


class NimhoffError(Exception):
    """Base class for all package errors."""


class SetSpecError(NimhoffError, ValueError):
    """A set-spec or game-spec string could not be parsed or is not canonicalizable."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at column {position})"
        super().__init__(message)


class ResourceCapError(NimhoffError, RuntimeError):
    """A configured DP length, node count or heap-size cap would be exceeded."""

    def __init__(self, what: str, requested: int, cap: int):
        self.what = what
        self.requested = requested
        self.cap = cap
        super().__init__(f"{what} {requested} exceeds cap {cap}")


class StairViolationError(NimhoffError, ValueError):
    """A heap's Grundy sequence is not an h-stair on the checked prefix."""

    def __init__(self, heap: int, index: int, h: int):
        self.heap = heap
        self.index = index
        self.h = h
        super().__init__(
            f"heap {heap + 1}: Grundy sequence is not a {h}-stair (first violation at index {index})"
        )


class CoverageError(NimhoffError, ValueError):
    """A Grundy sequence prefix is too short for the requested position."""
