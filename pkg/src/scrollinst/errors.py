"""Exception hierarchy shared by every module."""

from __future__ import annotations


class ScrollError(Exception):
    """Base class for all library errors."""


class DomainError(ScrollError, ValueError):
    """An input lies outside the domain of an operation."""


class UnsupportedDescriptor(ScrollError, TypeError):
    """A sheaf descriptor is not handled by the requested computation."""


class InternalInconsistency(ScrollError, RuntimeError):
    """Two independent computations of the same quantity disagree."""
