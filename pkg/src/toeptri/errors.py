"""Exception types shared across the package."""


class ToeptriError(Exception):
    """Base class for all package-specific errors."""


class DimensionTooLarge(ToeptriError):
    """A dense or exact-quadratic-cost operation was requested above its size cap."""


class DimensionMismatch(ToeptriError):
    """A vector argument does not match the matrix dimension."""


class SingularDiagonal(ToeptriError):
    """A diagonal entry mu + m fell below the pivot floor during a solve."""


class DomainError(ToeptriError):
    """A scalar argument lies outside the mathematical domain of the function."""


class HypothesisViolated(ToeptriError):
    """The spec does not satisfy the feasibility conditions required here."""


class ConfigError(ToeptriError):
    """A run configuration file or CLI argument could not be parsed/validated."""
