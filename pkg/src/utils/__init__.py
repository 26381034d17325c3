"""Utility Functions Module"""

from .data_io import DataIO
from .logger import setup_logger
from .errors import (
    FemtoscopyError,
    ArgumentError,
    CapacityError,
    DomainError,
    NumericalError,
    DataFormatError,
    PerturbativeRegimeWarning,
)

__all__ = [
    'DataIO',
    'setup_logger',
    'FemtoscopyError',
    'ArgumentError',
    'CapacityError',
    'DomainError',
    'NumericalError',
    'DataFormatError',
    'PerturbativeRegimeWarning',
]
