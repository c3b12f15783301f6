"""Exception taxonomy shared across the package.

The command line maps these onto exit codes: configuration and argument
problems are exit 1, file/format problems exit 2, numeric failures exit 3.
"""
from __future__ import annotations


class QcganError(Exception):
    """Base class for all package errors."""


class ValidationError(QcganError):
    """Invalid arguments, dimensions, or domain values."""


class CapacityError(ValidationError):
    """A size guard was exceeded (too many qubits, grid too large)."""


class ConfigError(QcganError):
    """Bad or unknown configuration keys/values."""


class FormatError(QcganError):
    """A file could not be parsed (dataset, checkpoint, sample file)."""


class NumericError(QcganError):
    """Numeric failure: solver stagnation or non-finite training losses."""


class EncoderSolveError(NumericError):
    """Angle solver failed to reach the required residual."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual
