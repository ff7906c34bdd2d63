"""Exception types shared across the package."""

from __future__ import annotations


class ContextFormatError(ValueError):
    """Raised when an input file cannot be parsed.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CrossContextError(ValueError):
    """A subset built against one context was used with another."""


class NotNormalizedError(ValueError):
    """An operation that presupposes a normalized context got a raw one."""


class FrameArrangementError(ValueError):
    """The frame's adjoint triple does not have the domains an operator needs."""


class AdjointnessError(ValueError):
    """A conjunctor admits no residua, or a claimed triple fails adjointness.

    ``witness`` holds the offending (x, y, z) grades when available.
    """

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured candidate budget."""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"enumeration needs {required} candidates "
            f"but the budget is {budget}; raise the budget to proceed"
        )
