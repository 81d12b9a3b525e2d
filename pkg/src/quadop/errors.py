"""Shared exception types, mapped to CLI exit codes in quadop.cli."""


class QuadopError(Exception):
    """Base class for errors raised by this package."""


class ParseError(QuadopError):
    """Identity DSL rejection, with the offending position when known."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class CapacityError(QuadopError):
    """Requested arity exceeds a configured cap."""

    def __init__(self, message, limit):
        super().__init__(message)
        self.limit = limit


class FieldError(QuadopError):
    """A prime field cannot faithfully represent the given rational data."""


class CrossCheckError(QuadopError):
    """Two independent computations of the same quantity disagree."""
