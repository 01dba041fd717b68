class L2Error(Exception):
    """Base class for computation errors raised by this package."""


class UnsupportedGroup(L2Error):
    pass


class GroupMismatch(L2Error, ValueError):
    pass


class NotIdempotent(L2Error):
    pass


class NonRealTrace(L2Error):
    pass


class NonSquare(L2Error):
    pass


class InvalidComplex(L2Error):
    pass


class InvalidResolution(L2Error):
    pass


class UnsupportedOracle(L2Error):
    pass


class InvalidCrossedProduct(L2Error, ValueError):
    pass


class ParseError(Exception):
    """Input text could not be parsed; carries a 1-based line and column."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{loc}: {message}"
        super().__init__(message)
