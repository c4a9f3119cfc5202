"""Exception types shared across the package."""

from __future__ import annotations


class MalformedInputError(ValueError):
    """A braid word, free word, or spec value violates its basic contract."""


class BudgetExceededError(RuntimeError):
    """Handle reduction ran out of its step budget.

    Carries the partially reduced word so callers can inspect or resume.
    """

    def __init__(self, message: str, partial):
        super().__init__(message)
        self.partial = partial


class UndecidedComparisonError(RuntimeError):
    """Two rays agree beyond the comparison depth cap; no verdict is possible."""

    def __init__(self, depth: int):
        super().__init__(f"words agree beyond depth cap {depth}")
        self.depth = depth


class StreamGrowthError(RuntimeError):
    """The certified image prefix of a stream stopped growing (degenerate stream)."""


class CalibrationError(RuntimeError):
    """No orientation convention reproduces the handle-reduction oracle.

    This signals an implementation bug, never a tunable.
    """


class SoulValidationError(RuntimeError):
    """Recomputed soul generators disagree with the stored ones."""


class SearchFailureError(RuntimeError):
    """An exhaustive or sampled search found no element with the required property."""
