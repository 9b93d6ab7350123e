"""Exception hierarchy shared by every module."""


class FmlGoError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(FmlGoError, ValueError):
    """Input parsed but violates a data-model constraint."""


class SgfParseError(FmlGoError, ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


class LogFormatError(ValidationError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class FmlError(FmlGoError, ValueError):
    """Malformed or unsupported fuzzy markup document."""


class InferenceError(FmlGoError, ValueError):
    pass


class DomainError(FmlGoError, ValueError):
    """A well-formed input falls outside what the algorithm accepts (e.g. too few moves)."""
