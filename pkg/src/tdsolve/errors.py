"""Shared exception types."""


class InputError(ValueError):
    """An operation was called with inputs that violate its preconditions."""


class ParseError(ValueError):
    """A file could not be parsed; carries the offending 1-based line number."""

    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class InternalError(RuntimeError):
    """An internal invariant broke.  Always a bug, never a user error."""


class ResourceLimit(RuntimeError):
    """A configured table-size cap was exceeded during the dynamic program."""
