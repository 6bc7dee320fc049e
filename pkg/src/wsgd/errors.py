"""Exception types shared by the numerical core and the CLI."""


class WsgdError(Exception):
    """Base class for errors raised by this package."""


class InvalidOrderError(WsgdError, ValueError):
    """A fractional order outside the admitted range (1, 2]."""


class DegenerateShiftError(WsgdError, ValueError):
    """Two shifts coincide where the weight formula divides by their difference."""


class UnsupportedShiftError(WsgdError, ValueError):
    """Grid operators only accept the integer shift set (1, 0, -1)."""


class SingularMatrixError(WsgdError, ArithmeticError):
    """LU factorization hit an exactly zero pivot."""


class MissingExactSolutionError(WsgdError, ValueError):
    """An error norm was requested for a problem without a closed-form solution."""
