"""Exception types shared across the package."""


class NZFlowError(Exception):
    """Base class for all errors raised by nzflow."""


class GraphParseError(NZFlowError):
    """Malformed graph input. Carries the byte offset (or line) of the defect."""

    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)


class NoFlowPossible(NZFlowError):
    """The graph has a bridge, so no nowhere-zero flow of any kind exists."""


class ContractViolation(NZFlowError):
    """A documented precondition of an operation was violated by the caller."""


class SearchBudgetExceeded(NZFlowError):
    """A node budget ran out before the search could produce a verdict."""
