"""Exception hierarchy shared by all modules."""


class TwistK3Error(Exception):
    """Base class for every error raised by the package."""


class InvalidInput(TwistK3Error, ValueError):
    pass


class ParseError(InvalidInput):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class NotPIntegral(InvalidInput):
    pass


class IntegralityViolation(TwistK3Error):
    pass


class DegenerateReduction(TwistK3Error):
    pass


class NonGenericCoordinates(TwistK3Error):
    pass


class NotASquare(TwistK3Error):
    pass


class NotOnSurface(InvalidInput):
    pass


class Indeterminate(TwistK3Error):
    pass


class RepresentativeMismatch(TwistK3Error):
    """Two usable symbol representatives disagreed at a point."""


class CannotConclude(TwistK3Error):
    pass


class NotFound(TwistK3Error):
    pass


class InvalidState(TwistK3Error):
    pass
