"""Exception hierarchy shared by every module of the package."""


class NcSpectralError(Exception):
    """Base class for all library errors."""


class NotInvertible(NcSpectralError, ArithmeticError):
    """A ring element has no two-sided inverse."""


class Singular(NcSpectralError, ArithmeticError):
    """A matrix could not be inverted."""


class Undefined(NcSpectralError, ArithmeticError):
    """A quasideterminant does not exist because its minor is singular."""


class PivotSingular(Undefined):
    """The pivot block handed to Sylvester reduction is not invertible."""


class DimensionMismatch(NcSpectralError, ValueError):
    pass


class IndexOutOfRange(NcSpectralError, IndexError):
    pass


class EvalError(NcSpectralError, ArithmeticError):
    """A weight expression cannot be evaluated at the requested level."""

    def __init__(self, message, level=None):
        super().__init__(message)
        self.level = level


class NoSolution(NcSpectralError, ArithmeticError):
    pass


class UnsupportedDivision(NcSpectralError, ArithmeticError):
    pass


class Inconsistent(NcSpectralError, ArithmeticError):
    """A linear system that must be solvable turned out not to be."""


class RootNotFound(NcSpectralError):
    pass


class RootRejected(NcSpectralError):
    pass


class VandermondeSingular(NcSpectralError, ArithmeticError):
    pass


class UnsupportedFunction(NcSpectralError, ValueError):
    pass


class ParseError(NcSpectralError, ValueError):
    """Raised by the entry parsers; carries the offending position."""

    def __init__(self, message, text="", position=0, expected=None):
        self.text = text
        self.position = position
        self.expected = expected
        detail = f"{message} at position {position}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)
