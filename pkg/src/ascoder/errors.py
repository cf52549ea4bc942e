"""Exception types shared across the package."""


class AscoderError(Exception):
    """Base class for all errors raised by this package."""


class MixedFieldsError(AscoderError):
    """Operands belong to different finite fields; values are never coerced."""


class ParseError(AscoderError):
    """Malformed input text; carries the offending position."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class DomainError(AscoderError):
    """Argument outside the domain of the operation (e.g. m <= 0)."""


class PrecisionExceededError(AscoderError):
    """The requested precision is not reachable from the input's precision."""


class PrecisionCapError(PrecisionExceededError):
    """Automatic precision escalation hit the hard cap without deciding."""
