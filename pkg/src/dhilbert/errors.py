"""Exception hierarchy shared by every module."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ResourceError(RuntimeError):
    """A requested truncation exceeds a configured size cap."""


class QuadratureError(ArithmeticError):
    """Numerical integration did not reach the requested tolerance.

    The best available estimate is kept on ``partial`` and the
    difference between the two resolutions on ``error_estimate``.
    """

    def __init__(self, message, partial, error_estimate):
        super().__init__(message)
        self.partial = partial
        self.error_estimate = error_estimate


class ConvergenceError(ArithmeticError):
    """An iterative method exhausted its iteration budget."""
