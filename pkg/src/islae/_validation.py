"""Exceptions and array validation helpers shared across the package."""

import numpy as np


class ISLAEError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ISLAEError, ValueError):
    """Malformed or inconsistent user input."""


class ParseError(InputError):
    """A system document could not be parsed."""


class OrderingError(InputError):
    """Endpoint form with a lower bound above its upper bound."""


class DomainError(ISLAEError, ValueError):
    """A formula was evaluated outside the region where it is defined."""


class NotMemberError(ISLAEError, ValueError):
    """A point outside the joined solution set was used where membership is required."""

    def __init__(self, message, row=None):
        super().__init__(message)
        self.row = row


class NumericalError(ISLAEError, ArithmeticError):
    """An internal numerical routine failed to converge."""


def as_matrix(a, name="matrix"):
    """Return ``a`` as a finite 2-D float64 array, raising InputError otherwise."""
    try:
        arr = np.array(a, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name}: not a numeric matrix ({exc})") from None
    if arr.ndim != 2:
        raise InputError(f"{name}: expected a 2-D matrix, got {arr.ndim} dimension(s)")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise InputError(f"{name}: matrix must be nonempty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name}: contains non-finite entries")
    return arr


def as_vector(v, name="vector", allow_empty=False):
    """Return ``v`` as a finite 1-D float64 array, raising InputError otherwise."""
    try:
        arr = np.array(v, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name}: not a numeric vector ({exc})") from None
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1:
        raise InputError(f"{name}: expected a 1-D vector, got {arr.ndim} dimension(s)")
    if arr.size == 0 and not allow_empty:
        raise InputError(f"{name}: vector must be nonempty")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name}: contains non-finite entries")
    return arr


def check_length(v, expected, name):
    if v.shape[0] != expected:
        raise InputError(f"{name}: expected length {expected}, got {v.shape[0]}")
