"""Exception types shared across the package."""


class FormatError(ValueError):
    """A file or wire payload does not match its declared format."""


class KeyFormatError(FormatError):
    """A key file could not be parsed.

    Carries the offending field/line so callers can produce precise
    diagnostics.
    """

    def __init__(self, message, *, field=None, line=None):
        super().__init__(message)
        self.field = field
        self.line = line


class OracleSizeError(ValueError):
    """The dense spatial oracle was asked to run above its size guard."""
