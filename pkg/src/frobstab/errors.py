"""Exception hierarchy shared by all frobstab modules."""


class FrobstabError(Exception):
    """Base class for all errors raised by this package."""


class InputError(FrobstabError):
    """Malformed user input: ring files, polynomial text, bad arguments."""


class ParseError(InputError):
    """Syntax error in polynomial text, with a character position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ContextMismatchError(FrobstabError):
    """Operands live in different rings or fields."""


class ResourceLimitError(FrobstabError):
    """A configured pair or degree cap was exceeded; no answer is returned."""


class NotSupportedError(FrobstabError):
    """The input is valid but outside the implemented algorithmic scope."""


class InconsistencyError(FrobstabError):
    """Two certified computation routes disagree; indicates an internal bug."""
