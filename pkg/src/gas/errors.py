"""Exception hierarchy shared by every gas module."""


class GasError(Exception):
    """Base class for all errors raised by the library."""


class ConfigurationError(GasError, ValueError):
    """Invalid or inconsistent configuration values."""


class DomainError(GasError, ValueError):
    """An argument lies outside the domain of the operation."""


class DimensionMismatchError(DomainError):
    """Array shapes do not agree with the declared dimension."""


class DenominatorTooSmall(GasError):
    """A finite-difference denominator fell below the configured floor.

    This is a resample signal: the caller is expected to draw a new companion
    or base point and try again.
    """

    def __init__(self, smallest, floor):
        self.smallest = smallest
        self.floor = floor
        super().__init__(
            f"Finite-difference denominator {smallest:.3e} is below floor {floor:.3e}"
        )


class EstimationError(GasError):
    """Monte Carlo estimation could not be completed."""


class NumericalError(GasError):
    """A linear-algebra routine failed or produced an invalid result."""


class FitError(GasError):
    """Least-squares fitting failed."""

    def __init__(self, message, condition=None):
        self.condition = condition
        super().__init__(message)


class UnderdeterminedSystemError(FitError):
    """Fewer training points than basis functions."""


class EvaluationError(GasError):
    """A model evaluation produced an invalid value."""


class UnsupportedOperationError(GasError):
    """The operation is not defined for the given input distribution."""


class DegenerateFunctionError(GasError):
    """The function has (numerically) zero variance."""
