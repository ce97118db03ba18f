import hashlib
import json
import logging

import numpy as np

from ..errors import EvaluationError

logger = logging.getLogger(__name__)


class ModelFunction:
    """Scalar-valued model on a product input measure.

    Subclasses implement ``_evaluate(points, rng)`` for an ``(n, d)`` array of
    row points and return an ``(n,)`` array. Stochastic models draw their noise
    from the supplied evaluation stream, so a fixed point and a fixed stream
    always give the same value.
    """

    name = "model"
    description = ""
    version = "1.0"

    def __init__(self, distribution):
        self.distribution = distribution

    @property
    def dimension(self):
        return self.distribution.dimension

    @property
    def stochastic(self):
        return False

    def _evaluate(self, points, rng):
        raise NotImplementedError

    def evaluate(self, points, rng=None):
        """Evaluate the model at every row of ``points``.

        Args:
            points: ``(n, d)`` array (a single ``d``-vector is accepted)
            rng: Evaluation stream, required by stochastic models

        Returns:
            np.ndarray: ``(n,)`` array of model values
        """
        points = self.distribution.check_points(points)
        if self.stochastic and rng is None:
            raise EvaluationError(
                f"Model '{self.name}' is stochastic and needs an evaluation stream"
            )

        values = np.asarray(self._evaluate(points, rng), dtype=float).reshape(-1)
        if values.shape[0] != points.shape[0]:
            raise EvaluationError(
                f"Model '{self.name}' returned {values.shape[0]} values "
                f"for {points.shape[0]} points"
            )
        if not np.all(np.isfinite(values)):
            bad = int(np.count_nonzero(~np.isfinite(values)))
            raise EvaluationError(f"Model '{self.name}' produced {bad} non-finite values")
        return values

    def __call__(self, z, rng=None):
        return float(self.evaluate(np.asarray(z, dtype=float).reshape(1, -1), rng)[0])

    def parameters(self):
        return {}

    def to_config(self):
        return {"model": self.name, **self.parameters()}

    def fingerprint(self):
        """Stable SHA-256 of the model configuration."""
        payload = json.dumps(self.to_config(), sort_keys=True, default=str)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def describe(self):
        return {
            "name": self.name,
            "description": self.description,
            "version": self.version,
            "dimension": self.dimension,
            "input": self.distribution.to_dict(),
            "stochastic": self.stochastic,
            "parameters": self.parameters(),
        }

    def __repr__(self):
        return f"{type(self).__name__}(dimension={self.dimension})"


class CallableModel(ModelFunction):
    """Wrap a vectorized callable ``func(points)`` (or ``func(points, rng)``) as a model."""

    def __init__(self, func, distribution, name="callable", description="", stochastic=False):
        super().__init__(distribution)
        self.func = func
        self.name = name
        self.description = description or f"User function {getattr(func, '__name__', name)}"
        self._stochastic = stochastic

    @property
    def stochastic(self):
        return self._stochastic

    def _evaluate(self, points, rng):
        if self._stochastic:
            return self.func(points, rng)
        return self.func(points)

    def parameters(self):
        return {"function": getattr(self.func, "__qualname__", repr(self.func))}
