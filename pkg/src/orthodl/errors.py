"""Exception types shared across the package."""


class ParameterError(ValueError):
    """Invalid input parameters (non-prime p, p = 2, bad dimensions, ...)."""


class ResourceLimitError(RuntimeError):
    """A configured work budget was exceeded."""

    def __init__(self, message, spent=None, budget=None):
        super().__init__(message)
        self.spent = spent
        self.budget = budget


class NotIsotropicError(ParameterError):
    pass


class NotStabilizedError(RuntimeError):
    """Finite differences of a Hilbert profile did not become constant."""


class CloudTooSmallError(RuntimeError):
    """The point cloud has no more points than the Hilbert function value."""
