"""Shared exception types."""


class InputError(ValueError):
    """Malformed input: bad graph file, out-of-range index, bad certificate."""


class SearchBudgetExceeded(RuntimeError):
    """An exact search was cut off by an explicit node budget."""
