"""Exception types shared across the package.

The CLI maps these onto process exit codes: usage problems exit 2,
domain/precision problems exit 1, kernel integrity violations exit 3.
"""

from __future__ import annotations


class DomainError(ValueError):
    """A numeric argument lies outside the mathematical domain of an operation."""


class UsageError(ValueError):
    """An operation was called with structurally invalid arguments."""


class IntegrityError(RuntimeError):
    """An internal exactness guarantee failed (e.g. a transient term survived)."""


class PrecisionError(RuntimeError):
    """A high-precision routine could not reach its requested tolerance."""


class ResolutionError(RuntimeError):
    """A sampled coefficient grid is too coarse for the requested operation."""
