"""Global active subspace dimension reduction with PCE surrogates."""

from .errors import (
    ConfigurationError,
    DegenerateFunctionError,
    DenominatorTooSmall,
    DimensionMismatchError,
    DomainError,
    EstimationError,
    EvaluationError,
    FitError,
    GasError,
    NumericalError,
    UnderdeterminedSystemError,
    UnsupportedOperationError,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "DegenerateFunctionError",
    "DenominatorTooSmall",
    "DimensionMismatchError",
    "DomainError",
    "EstimationError",
    "EvaluationError",
    "FitError",
    "GasError",
    "NumericalError",
    "UnderdeterminedSystemError",
    "UnsupportedOperationError",
    "__version__",
]
