"""Shared exception types."""


class DmlError(Exception):
    """Base class for all library errors."""


class DomainError(DmlError, ValueError):
    """Input outside an operation's mathematical domain."""


class FieldMismatchError(DomainError):
    """Elements or places from incompatible number fields were mixed."""


class HypothesisError(DomainError):
    """A stated theorem hypothesis is violated by the input data."""


class ParseError(DmlError, ValueError):
    """Problem-file syntax or validation error, located by line and field."""

    def __init__(self, message: str, *, line: int | None = None, field: str | None = None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = " ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class PrecisionExhausted(DmlError, RuntimeError):
    """A certified comparison stayed indeterminate up to the precision ceiling."""

    def __init__(self, message: str, bits: int | None = None):
        self.bits = bits
        super().__init__(message)
