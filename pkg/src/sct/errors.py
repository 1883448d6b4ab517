"""Exceptions raised by the checker."""


class SctError(Exception):
    """Base class for all checker errors."""


class ParseError(SctError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = "" if line is None else "%d:%d: " % (line, col or 0)
        super().__init__(where + message)


class ArityError(ParseError):
    """A function is called with the wrong number of arguments."""


class AnalysisError(SctError):
    """A composition produced an ill-typed reduction (projection of a
    constructor, destructor applied to a tuple, out-of-range projection).
    This means the program was not well-typed to begin with."""
