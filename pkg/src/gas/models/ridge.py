import numpy as np

from ..errors import ConfigurationError
from ..sampling import InputDistribution, RngStream
from .base import ModelFunction


class RidgeModel(ModelFunction):
    """Indicator ``1{theta^T z > 0}`` of a half-space through the origin."""

    name = "ridge"
    description = "Discontinuous ridge function 1{theta^T z > 0} with standard normal inputs"

    def __init__(self, theta, seed=None):
        theta = np.asarray(theta, dtype=float).reshape(-1)
        if theta.size == 0 or not np.any(theta != 0):
            raise ConfigurationError("theta must be a nonzero vector")
        super().__init__(InputDistribution.standard_normal(theta.size))
        self.theta = theta
        self.seed = seed

    @classmethod
    def generate(cls, dimension=10, seed=0):
        """Ridge direction with i.i.d. standard normal entries."""
        theta = RngStream(seed).standard_normal(dimension)
        return cls(theta, seed=seed)

    @classmethod
    def from_config(cls, params):
        if "theta" in params:
            return cls(params["theta"])
        return cls.generate(int(params.get("dimension", 10)), int(params.get("seed", 0)))

    @property
    def direction(self):
        return self.theta / np.linalg.norm(self.theta)

    def _evaluate(self, points, rng):
        return (points @ self.theta > 0).astype(float)

    def parameters(self):
        if self.seed is not None:
            return {"dimension": self.dimension, "seed": self.seed}
        return {"theta": self.theta.tolist()}


def ridge_eval(model, z):
    return model(z)
