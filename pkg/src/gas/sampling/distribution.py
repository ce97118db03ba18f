from enum import Enum

import numpy as np

from ..errors import ConfigurationError, DimensionMismatchError
from .normal import norm_cdf, norm_quantile


class DistributionKind(str, Enum):
    STD_NORMAL = "std_normal"
    UNIT_UNIFORM = "unit_uniform"


class InputDistribution:
    """Product measure on the model domain: i.i.d. coordinates under one marginal."""

    def __init__(self, kind, dimension):
        try:
            self.kind = DistributionKind(kind)
        except ValueError:
            raise ConfigurationError(f"Unknown input distribution '{kind}'")
        if int(dimension) < 1:
            raise ConfigurationError(f"Input dimension must be positive, got {dimension}")
        self.dimension = int(dimension)

    @classmethod
    def standard_normal(cls, dimension):
        return cls(DistributionKind.STD_NORMAL, dimension)

    @classmethod
    def unit_uniform(cls, dimension):
        return cls(DistributionKind.UNIT_UNIFORM, dimension)

    @property
    def is_normal(self):
        return self.kind is DistributionKind.STD_NORMAL

    def cdf(self, x):
        """Marginal CDF applied elementwise."""
        if self.is_normal:
            return norm_cdf(x)
        return np.clip(x, 0.0, 1.0)

    def quantile(self, u):
        """Marginal quantile applied elementwise."""
        if self.is_normal:
            return norm_quantile(u)
        return u

    def check_points(self, points):
        """Return ``points`` as a 2-D float array with ``dimension`` columns."""
        points = np.asarray(points, dtype=float)
        if points.ndim == 1:
            points = points[np.newaxis, :]
        if points.ndim != 2 or points.shape[1] != self.dimension:
            raise DimensionMismatchError(
                f"Expected points of dimension {self.dimension}, got shape {points.shape}"
            )
        return points

    def to_dict(self):
        return {"kind": self.kind.value, "dimension": self.dimension}

    def __eq__(self, other):
        if not isinstance(other, InputDistribution):
            return NotImplemented
        return self.kind is other.kind and self.dimension == other.dimension

    def __hash__(self):
        return hash((self.kind, self.dimension))

    def __repr__(self):
        return f"InputDistribution(kind={self.kind.value}, dimension={self.dimension})"
