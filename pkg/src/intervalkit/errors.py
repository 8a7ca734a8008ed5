"""Exception hierarchy shared by every intervalkit module."""


class IntervalError(ValueError):
    """Base class for all library errors."""


class ReversedEndpoints(IntervalError):
    pass


class IndeterminateForm(IntervalError):
    pass


class ZeroInDivisor(IntervalError):
    pass


class InfiniteEndpoint(IntervalError):
    pass


class ZeroInProDivisor(IntervalError):
    pass


class Unsupported(IntervalError):
    pass


class InvalidEncoding(IntervalError):
    pass


class DimensionMismatch(IntervalError):
    pass


class ParseError(IntervalError):
    """Raised by the expression parser.

    ``offset`` is the byte offset of the offending token and ``expected``
    the set of token kinds that would have been accepted there.
    """

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(sorted(self.expected))})"
        super().__init__(detail)


class SolverError(IntervalError):
    """Base for numerical failure states of the solvers.

    Failures that still carry a useful candidate attach it as ``report``.
    """

    status = "error"

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NoConvergence(SolverError):
    status = "no_convergence"


class NotContracting(SolverError):
    status = "not_contracting"


class NotVerified(SolverError):
    status = "not_verified"


class Improper(SolverError):
    status = "improper"


class TooManySingularSamples(SolverError):
    status = "too_many_singular_samples"


class SingularMidpoint(SolverError):
    status = "singular_midpoint"


class BudgetExceeded(SolverError):
    status = "budget_exceeded"
