"""Exception hierarchy shared by the toolkit and mapped onto CLI exit codes."""


class BroadcastToolkitError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class ValidationError(BroadcastToolkitError, ValueError):
    """An instance, broadcast or pattern failed validation."""

    exit_code = 1


class UnsupportedInstanceError(BroadcastToolkitError):
    """The instance lies outside the class an operation handles."""

    exit_code = 2

    def __init__(self, message: str, reason: str = "unsupported"):
        super().__init__(message)
        self.reason = reason


class BudgetExceededError(BroadcastToolkitError):
    """An exact search would exceed its configured resource budget."""

    exit_code = 3


class InvariantViolation(BroadcastToolkitError):
    """An internal consistency check failed (a genuine bug)."""

    exit_code = 4
