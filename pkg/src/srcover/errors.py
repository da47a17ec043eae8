"""Shared exception types."""


class BudgetExceededError(RuntimeError):
    """An enumeration or search would exceed the configured space/time budget."""


class PrecisionError(RuntimeError):
    """An interval computation could not reach the requested width."""
