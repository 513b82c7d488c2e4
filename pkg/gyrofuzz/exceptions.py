class GyrofuzzError(Exception):
    """Base class for every error raised by gyrofuzz."""


class ConfigurationError(GyrofuzzError):
    """A selector, setting or t-norm definition cannot be resolved."""


class DomainError(GyrofuzzError, ValueError):
    """A value lies outside the domain of an operation."""


class UnsoundOperationError(GyrofuzzError):
    """An operation was requested whose soundness precondition failed."""


class FixtureError(GyrofuzzError):
    """A completion fixture is malformed."""


class TableParseError(GyrofuzzError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")
