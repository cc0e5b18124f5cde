"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: invalid input and parse errors are
exit code 3, numerical failures (eigensolver breakdown, overflow, broken
positivity) are exit code 4.
"""


class SpectradError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(SpectradError, ValueError):
    """A matrix or argument violates a precondition (non-square, NaN, bad range)."""


class MatrixParseError(SpectradError, ValueError):
    """A matrix file could not be parsed.

    ``line`` and ``field`` carry the position of the offending token when
    known (1-based; ``None`` otherwise).
    """

    def __init__(self, message, line=None, field=None):
        if line is not None:
            where = f" (line {line}" + (f", field {field}" if field is not None else "") + ")"
            message = message + where
        super().__init__(message)
        self.line = line
        self.field = field


class NumericalFailureError(SpectradError):
    """An iterative solver failed to converge.

    Carries a hash of the offending matrix so failures can be reproduced.
    """

    def __init__(self, message, matrix_hash=None):
        if matrix_hash is not None:
            message = f"{message} [matrix sha256 {matrix_hash}]"
        super().__init__(message)
        self.matrix_hash = matrix_hash


class RangeOverflowError(SpectradError, OverflowError):
    """A requested computation would overflow double precision (rejected, not saturated)."""


class NotPositiveSemidefiniteError(SpectradError):
    """A matrix required to be positive semidefinite has a genuinely negative eigenvalue."""
