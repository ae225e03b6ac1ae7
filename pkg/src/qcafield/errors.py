"""Exception hierarchy shared across the package."""


class QCAError(Exception):
    """Base class for all simulator errors."""


class GeometryError(QCAError, ValueError):
    """Invalid layout: colliding dots, bad axis, overlapping field regions."""


class CoincidentChargeError(GeometryError):
    """Two interacting point charges sit on top of each other."""


class SizeError(QCAError, ValueError):
    """Requested state space exceeds the configured limit."""


class ConvergenceError(QCAError, RuntimeError):
    """An eigensolver failed to reach its tolerance."""


class BracketError(QCAError, ValueError):
    """Bisection bracket does not straddle a crossing."""


class DocumentError(QCAError, ValueError):
    """Circuit document could not be parsed or validated."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column
