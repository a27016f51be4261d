"""Exception types shared across the package."""

from __future__ import annotations


class ElsvKitError(Exception):
    """Base class for package errors."""


class SeriesError(ElsvKitError, ValueError):
    """A truncated-series operation was called outside its domain."""


class StabilityError(ElsvKitError, ValueError):
    """A moduli-space operation received a non-stable (g, n)."""


class ParameterError(ElsvKitError, ValueError):
    """Invalid parameter combination (level, twists, partitions, ...)."""


class ResourceLimitError(ElsvKitError, RuntimeError):
    """A brute-force routine was asked to exceed its stated size limits."""


class CacheFormatError(ElsvKitError, ValueError):
    """A persistent cache file contains a malformed line."""


class PrecisionError(ElsvKitError, ArithmeticError):
    """A numerical result failed its internal stability check."""
