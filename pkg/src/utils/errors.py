"""Exception hierarchy shared by all modules"""

from typing import Optional


class FemtoscopyError(Exception):
    """Base class for all library errors"""


class ArgumentError(FemtoscopyError, ValueError):
    """Malformed input, dimension mismatch or violated precondition"""


class CapacityError(FemtoscopyError):
    """Total Hilbert-space dimension above Config.MAX_TOTAL_DIM"""


class DomainError(FemtoscopyError, ValueError):
    """Value outside the mathematical domain of an operation"""


class NumericalError(FemtoscopyError, ArithmeticError):
    """Quadrature non-convergence, singular systems, degenerate normalisation"""


class DataFormatError(ArgumentError):
    """Malformed CSV or JSON input"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        """
        Initialize DataFormatError

        Args:
            message: Description of the problem
            line_number: 1-based line of the offending record, if known
        """
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class PerturbativeRegimeWarning(UserWarning):
    """First-order amplitude too large for perturbation theory to hold"""
