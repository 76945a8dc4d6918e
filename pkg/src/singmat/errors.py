"""Exception types shared across the package."""


class SingmatError(Exception):
    """Base class for all errors raised by singmat."""


class ParseError(SingmatError):
    """Malformed polynomial text or germ file."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)


class InputError(SingmatError):
    """Input that parses but is not acceptable (wrong shape, constant term, ...)."""


class NotTransverseError(SingmatError):
    """A length that the formula needs is infinite for this germ."""


class NotFreeDivisorError(SingmatError):
    """A divisor that must be free failed the Saito check."""


class ResourceLimitError(SingmatError):
    """A configured computational cap was exceeded."""
