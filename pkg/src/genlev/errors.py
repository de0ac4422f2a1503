"""Exception hierarchy.

Input problems derive from :class:`ValueError`; failures that only show up
once the numbers are crunched derive from :class:`NumericalError`.  The CLI
maps the first group to exit status 2 and the second to exit status 3.
"""


class GenlevError(Exception):
    """Base class for every error raised by this package."""


class MatrixSyntaxError(GenlevError, ValueError):
    """Malformed matrix text or complex literal."""


class DimensionError(GenlevError, ValueError):
    """Shapes do not match or a square matrix was required."""


class DomainError(GenlevError, ValueError):
    """A parameter lies outside the domain where the operation is defined."""


class NumericalError(GenlevError, ArithmeticError):
    """A numerical precondition failed."""


class DefectiveMatrixError(NumericalError):
    """The matrix (or the requested eigenvalue) is not diagonalizable."""


class EigenvalueNotFoundError(NumericalError):
    """No eigenvalue of the system lies within the cluster tolerance."""


class NonNormalError(NumericalError):
    """A normal matrix was required."""


class NegativeRadicandError(NumericalError):
    """A radicand that must be nonnegative came out clearly negative."""


class ConditionNotMetError(NumericalError):
    """A hypothesis required by a closed-form shortcut does not hold."""
