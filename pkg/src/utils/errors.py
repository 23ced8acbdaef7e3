"""Exception types shared by the numeric modules."""


class UsageError(ValueError):
    """Raised when an operation is called outside its documented domain."""

    pass


class ConvergenceError(Exception):
    """Raised when an iterative estimate does not settle within its budget."""

    def __init__(self, message: str, estimate: float):
        super().__init__(message)
        self.estimate = estimate


class NumericalFailureError(Exception):
    """Raised when a computation produces non-finite values."""

    pass
