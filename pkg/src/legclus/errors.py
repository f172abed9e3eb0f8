"""Shared exception types."""


class LegclusError(Exception):
    """Base class for errors raised by this package."""


class InputError(LegclusError):
    """Invalid user-supplied data (malformed word, wrong form, bad flag)."""


class BudgetError(LegclusError):
    """An enumeration would exceed its configured budget."""


class AlgebraError(LegclusError):
    """An internal algebraic guarantee failed; indicates a bug, never caught."""
