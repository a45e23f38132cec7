"""Exception types shared across the package."""


class LefschetzError(Exception):
    """Base class for all errors raised by this package."""


class NonIntegral(LefschetzError, ArithmeticError):
    """An exact division that must land in the integers did not."""


class IllegalMove(LefschetzError):
    """A rewrite move does not apply to the word at the given position."""

    def __init__(self, reason, index=None):
        self.reason = reason
        self.index = index
        prefix = f"move {index}: " if index is not None else ""
        super().__init__(prefix + reason)


class RefusesVerdict(LefschetzError):
    """A decision procedure was called outside its hypotheses."""


class NoSuchFibre(LefschetzError):
    """A census has no singular fibre of the requested type."""


class NonDivisible(LefschetzError, ArithmeticError):
    """A divisibility precondition on fibre counts failed."""


class ParseError(LefschetzError, ValueError):
    """Malformed input text, with a 1-based line and column."""

    def __init__(self, message, line=1, column=1, source=None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:" if source else ""
        super().__init__(f"{where}{line}:{column}: {message}")
