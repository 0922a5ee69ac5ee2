"""Instanton bundles on three-dimensional rational normal scrolls."""

from .chow import DivisorClass, CurveClass, Scroll
from .errors import DomainError, InternalInconsistency, ScrollError, UnsupportedDescriptor

__all__ = [
    "CurveClass",
    "DivisorClass",
    "DomainError",
    "InternalInconsistency",
    "Scroll",
    "ScrollError",
    "UnsupportedDescriptor",
]
__version__ = "0.1.0"
