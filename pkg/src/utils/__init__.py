"""Utilities package."""

from .cache import InMemoryCache, instance_cache
from .errors import ConvergenceError, NumericalFailureError, UsageError

__all__ = [
    "ConvergenceError",
    "InMemoryCache",
    "NumericalFailureError",
    "UsageError",
    "instance_cache",
]
