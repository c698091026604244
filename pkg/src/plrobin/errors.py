"""Exception types shared across the package."""


class PLRobinError(Exception):
    """Base class for all package errors."""


class DomainError(PLRobinError, ValueError):
    """Input outside the mathematical domain of an operation."""


class EmptyLevelSetError(DomainError):
    """Requested superlevel set is empty."""


class UnsupportedError(PLRobinError, ValueError):
    """Operation not supported for the given parameters (e.g. p != 2 separable check)."""


class NumericalError(PLRobinError, RuntimeError):
    """A numerical procedure failed to reach its target accuracy."""


class IntegrationError(NumericalError):
    """Adaptive ODE integration failed (step underflow or state blow-up)."""


class SearchExhaustedError(NumericalError):
    """Eigenvalue bracket scan found no admissible sign change."""


class ConvergenceError(NumericalError):
    """Iteration cap reached before the convergence criterion.

    Carries the last iterate value in ``last_value``.
    """

    def __init__(self, message, last_value=None):
        super().__init__(message)
        self.last_value = last_value


class VerificationError(PLRobinError):
    """A comparison check failed; the offending record is attached."""

    def __init__(self, message, record=None):
        super().__init__(message)
        self.record = record
