"""Exceptions and exit codes used throughout chaintree."""
import enum
from typing import TYPE_CHECKING, Any

if TYPE_CHECKING:
    from .core import Violation


class ChaintreeError(Exception):
    """Base class for all errors raised by chaintree."""


class ParseError(ChaintreeError, ValueError):
    """Raised when text or JSON input cannot be parsed into a model value."""


class InvariantViolation(ChaintreeError):
    """Raised when a value breaks one of the diagram model's invariants.

    If the violation was found by `validate_diagram`, the report is available
    as *violation*.
    """

    violation: "Violation | None"

    def __init__(self, message: str, violation: "Violation | None" = None):
        super().__init__(message)
        self.violation = violation


class BudgetExceeded(ChaintreeError):
    """Raised when an exhaustive enumeration would exceed its state budget."""

    required: int
    budget: int

    def __init__(self, required: int, budget: int, what: str = "enumeration"):
        super().__init__(
            f"{what} needs {required} states, which exceeds the budget of {budget}"
        )
        self.required = required
        self.budget = budget


class MethodDisagreement(ChaintreeError):
    """Raised when independent counting methods produce different values."""

    values: dict[str, Any]

    def __init__(self, label: str, values: dict[str, Any]):
        listing = ", ".join(f"{method}={value}" for method, value in values.items())
        super().__init__(f"methods disagree for {label}: {listing}")
        self.values = dict(values)


class ExitCode(enum.IntEnum):
    """Process exit codes of the command line interface."""

    OK = 0
    FAILURE = 1
    BAD_ARGUMENTS = 2
    DISAGREEMENT = 3
    BUDGET = 4
    INVARIANT = 5

    def __str__(self) -> str:
        if self == self.OK:
            return "Success"
        if self == self.FAILURE:
            return "Check failed"
        if self == self.BAD_ARGUMENTS:
            return "Bad arguments"
        if self == self.DISAGREEMENT:
            return "Methods disagree"
        if self == self.BUDGET:
            return "Budget exceeded"
        if self == self.INVARIANT:
            return "Invariant violated"
        return self.name

    @classmethod
    def for_exception(cls, exc: BaseException) -> "ExitCode":
        """Map an exception raised by chaintree to the matching exit code."""
        if isinstance(exc, MethodDisagreement):
            return cls.DISAGREEMENT
        if isinstance(exc, BudgetExceeded):
            return cls.BUDGET
        if isinstance(exc, InvariantViolation):
            return cls.INVARIANT
        if isinstance(exc, ValueError):
            return cls.BAD_ARGUMENTS
        return cls.FAILURE
