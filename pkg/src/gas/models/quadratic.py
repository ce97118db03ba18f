import logging

import numpy as np
from scipy import linalg

from ..errors import ConfigurationError, DimensionMismatchError
from ..sampling import InputDistribution, RngStream
from .base import ModelFunction

logger = logging.getLogger(__name__)


def default_spectrum(dimension):
    """Eigenvalues ``10^(-(i-1)/2)``, i = 1..dimension."""
    return 10.0 ** (-np.arange(dimension) / 2.0)


def random_orthogonal(dimension, rng):
    """Orthogonal factor of a Gaussian matrix, signs fixed so ``diag(R) > 0``."""
    gaussian = rng.standard_normal((dimension, dimension))
    Q, R = linalg.qr(gaussian)
    signs = np.sign(np.diag(R))
    signs[signs == 0] = 1.0
    return Q * signs


class QuadraticNoiseModel(ModelFunction):
    """``f(z) = z^T A z / 2 + eps`` on the unit cube, ``eps ~ N(0, noise_sigma^2)``."""

    name = "quadratic"
    description = "Noisy quadratic form z^T A z / 2 with A = Q diag(spectrum) Q^T"

    def __init__(self, A, noise_sigma=0.0, Q=None, spectrum=None, seed=None):
        A = np.asarray(A, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ConfigurationError(f"A must be a square matrix, got shape {A.shape}")
        if noise_sigma < 0:
            raise ConfigurationError(f"noise_sigma must be non-negative, got {noise_sigma}")
        A = 0.5 * (A + A.T)
        if np.linalg.eigvalsh(A).min() <= 0:
            raise ConfigurationError("A must be positive definite")

        super().__init__(InputDistribution.unit_uniform(A.shape[0]))
        self.A = A
        self.noise_sigma = float(noise_sigma)
        self.Q = Q
        self.spectrum = None if spectrum is None else np.asarray(spectrum, dtype=float)
        self.seed = seed

    @classmethod
    def generate(cls, dimension=10, noise_sigma=0.0, seed=0, spectrum=None):
        """Build ``A = Q diag(spectrum) Q^T`` with ``Q`` drawn from ``seed``."""
        spectrum = default_spectrum(dimension) if spectrum is None else np.asarray(spectrum, float)
        if spectrum.shape != (dimension,):
            raise ConfigurationError(
                f"spectrum must have {dimension} entries, got {spectrum.shape[0]}"
            )
        Q = random_orthogonal(dimension, RngStream(seed))
        A = Q @ np.diag(spectrum) @ Q.T
        logger.debug(f"Generated quadratic model with d={dimension}, seed={seed}")
        return cls(A, noise_sigma=noise_sigma, Q=Q, spectrum=spectrum, seed=seed)

    @classmethod
    def from_matrix(cls, A, noise_sigma=0.0):
        return cls(A, noise_sigma=noise_sigma)

    @classmethod
    def from_config(cls, params):
        params = dict(params)
        noise_sigma = float(params.get("noise_sigma", 0.0))
        if "A" in params:
            return cls.from_matrix(params["A"], noise_sigma)
        spectrum = params.get("spectrum")
        return cls.generate(
            dimension=int(params.get("dimension", 10)),
            noise_sigma=noise_sigma,
            seed=int(params.get("seed", 0)),
            spectrum=None if spectrum is None else np.asarray(spectrum, dtype=float),
        )

    def with_noise(self, noise_sigma):
        return QuadraticNoiseModel(
            self.A, noise_sigma, Q=self.Q, spectrum=self.spectrum, seed=self.seed
        )

    @property
    def stochastic(self):
        return self.noise_sigma > 0

    def noiseless(self, points):
        points = self.distribution.check_points(points)
        return 0.5 * np.einsum("ni,ij,nj->n", points, self.A, points)

    def gradient(self, z):
        """Exact gradient ``A z`` of the noiseless part (rows for a batch)."""
        z = np.asarray(z, dtype=float)
        if z.shape[-1] != self.dimension:
            raise DimensionMismatchError(
                f"Expected points of dimension {self.dimension}, got shape {z.shape}"
            )
        return z @ self.A

    def _evaluate(self, points, rng):
        values = 0.5 * np.einsum("ni,ij,nj->n", points, self.A, points)
        if self.noise_sigma > 0:
            values = values + self.noise_sigma * rng.standard_normal(points.shape[0])
        return values

    def parameters(self):
        if self.seed is not None:
            params = {
                "dimension": self.dimension,
                "seed": self.seed,
                "noise_sigma": self.noise_sigma,
            }
            if self.spectrum is not None:
                params["spectrum"] = self.spectrum.tolist()
            return params
        return {"A": self.A.tolist(), "noise_sigma": self.noise_sigma}


def quadratic_eval(model, z, rng=None):
    return model(z, rng)


def quadratic_gradient_oracle(model, z):
    return model.gradient(z)
