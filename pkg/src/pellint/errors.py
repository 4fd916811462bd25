"""Exception hierarchy shared by every module."""


class PellintError(Exception):
    """Base class for all library errors."""


class DomainError(PellintError, ValueError):
    """An argument lies outside the domain of the requested function."""


class PrecisionError(PellintError, ArithmeticError):
    """A series or iteration could not reach the requested tolerance."""


class ConvergenceError(PellintError, ArithmeticError):
    """An iterative method hit its iteration or refinement cap."""
