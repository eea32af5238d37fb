"""Exception types raised across the package."""


class GaussianError(Exception):
    """Base class for all package errors."""


class ShapeError(GaussianError, ValueError):
    """Matrix has the wrong shape (non-square, odd dimension, size mismatch)."""


class DataError(GaussianError, ValueError):
    """Matrix contains NaN or infinite entries."""


class CapacityError(GaussianError, ValueError):
    """Input exceeds the supported number of modes or parties."""


class NumericError(GaussianError, ArithmeticError):
    """A factorization or eigen-decomposition failed (e.g. matrix not positive definite)."""


class UnphysicalError(GaussianError, ValueError):
    """Parameters or matrices violate the uncertainty relation."""

    def __init__(self, message, nu=None):
        super().__init__(message)
        self.nu = nu


class DomainError(GaussianError, ValueError):
    """Argument outside the domain where a formula has a real solution."""


class UnsupportedCaseError(GaussianError, NotImplementedError):
    """Requested quantity is only implemented for a restricted class of states."""


class ParseError(GaussianError, ValueError):
    """State document does not match the expected schema."""

    def __init__(self, message, path="$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class SeparableSourceWarning(UserWarning):
    """A two-mode source is too noisy to be entangled."""


class UnphysicalStateWarning(UserWarning):
    """A state read from disk fails the uncertainty relation."""
