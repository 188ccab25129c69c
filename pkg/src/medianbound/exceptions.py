"""Exception hierarchy shared by every module in the package."""


class MedianBoundError(Exception):
    """Base class for all package errors."""


class ParseError(MedianBoundError, ValueError):
    """Malformed expression or literal. ``offset`` is the byte offset of the fault."""

    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class DomainError(MedianBoundError, ArithmeticError):
    """Evaluation outside a function's domain (log, sqrt, division)."""


class NotPolynomial(MedianBoundError, TypeError):
    pass


class PreconditionError(MedianBoundError, ValueError):
    """An operation was called with arguments violating its contract."""


class EmptyIntersection(PreconditionError):
    pass


class NonZeroMean(PreconditionError):
    pass


class SideConditionViolated(PreconditionError):
    pass


class DegenerateIntegrator(PreconditionError):
    pass


class DiscontinuousAtJump(PreconditionError):
    pass


class NonRigorousRange(PreconditionError):
    """Sampled ranges were offered where a certificate is required."""


class NonConvergent(MedianBoundError, RuntimeError):
    pass
