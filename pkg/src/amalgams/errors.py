"""Exception hierarchy shared by every module.

The CLI maps `PreconditionError` subclasses to exit code 2 and
`BudgetExceeded` subclasses to exit code 3.
"""


class AmalgamError(Exception):
    pass


class PreconditionError(AmalgamError, ValueError):
    """An input violates the documented precondition of an operation."""


class DomainError(PreconditionError):
    pass


class NotHyperbolicError(PreconditionError):
    pass


class UnsupportedTwistError(PreconditionError):
    pass


class ConstructionError(PreconditionError):
    pass


class BudgetExceeded(AmalgamError, RuntimeError):
    """A search hit its word-length, element-count or wall-clock budget.

    `horizon` is the length up to which the output is still complete.
    """

    def __init__(self, message, horizon=None):
        super().__init__(message)
        self.horizon = horizon


class NotConverged(BudgetExceeded):
    pass
