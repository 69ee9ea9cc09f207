"""Exception hierarchy shared by the numerical core and the experiment layer."""

from __future__ import annotations


class GevreyNlsError(Exception):
    """Base exception for gevrey-nls failures."""


class ParameterError(GevreyNlsError, ValueError):
    """Raised when a numeric parameter is outside its admissible range."""


class GridError(ParameterError):
    """Raised when a grid specification is invalid."""


class FieldError(GevreyNlsError):
    """Raised when field samples are non-finite or do not match their grid."""


class OverflowGuardError(GevreyNlsError):
    """Raised when an exponential multiplier would exceed the overflow guard."""


class InstabilityError(GevreyNlsError):
    """Raised when a time step produces non-finite values."""


class ContractionError(GevreyNlsError):
    """Raised when the Picard iteration fails to contract."""


class DegenerateInputError(GevreyNlsError):
    """Raised when a fit or formula is meaningless for the given input."""


class EstimateError(GevreyNlsError):
    """Raised for malformed estimate requests (arity, unknown id, empty batch)."""


class ConfigError(GevreyNlsError):
    """Raised when an experiment configuration fails validation."""


class ResultError(GevreyNlsError):
    """Raised when results cannot be written or rendered."""


__all__ = [
    "GevreyNlsError",
    "ParameterError",
    "GridError",
    "FieldError",
    "OverflowGuardError",
    "InstabilityError",
    "ContractionError",
    "DegenerateInputError",
    "EstimateError",
    "ConfigError",
    "ResultError",
]
