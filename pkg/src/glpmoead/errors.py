"""Exception types raised across the package."""


class GlpMoeadError(Exception):
    """Base class for all package errors."""


class DimensionError(GlpMoeadError, ValueError):
    """Vectors that must share a length do not."""


class ParameterError(GlpMoeadError, ValueError):
    """A numeric parameter is outside its admissible range."""


class DomainError(GlpMoeadError, ValueError):
    """A function was called outside its mathematical domain."""


class EncodingError(GlpMoeadError, ValueError):
    """A solution encoding does not match the problem."""


class NumericError(GlpMoeadError, ArithmeticError):
    """A computation produced a non-finite value."""


class ConfigurationError(GlpMoeadError, ValueError):
    """An experiment or run configuration is invalid."""


class LatticeError(ConfigurationError):
    """The requested population size is not a simplex-lattice size."""

    def __init__(self, message: str, below: int | None = None, above: int | None = None):
        super().__init__(message)
        self.below = below
        self.above = above


class PFUnavailableError(GlpMoeadError, LookupError):
    """The problem has no analytic Pareto front."""
