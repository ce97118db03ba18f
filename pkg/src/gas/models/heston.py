import logging
from dataclasses import asdict, dataclass

import numpy as np

from ..errors import ConfigurationError
from ..sampling import InputDistribution
from .base import ModelFunction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HestonConfig:
    """Arithmetic Asian call under Heston dynamics, monitored at ``d`` equally spaced dates."""

    S0: float = 100.0
    K: float = 100.0
    r: float = 0.03
    T: float = 1.0
    d: int = 10
    V0: float = 0.04
    kappa: float = 2.0
    theta: float = 0.04
    sigma_v: float = 0.09
    rho: float = 0.9
    n_vol_paths: int = 10
    substeps: int = 10
    strict_feller: bool = False
    antithetic: bool = False
    chunk_size: int = 2000

    def __post_init__(self):
        if not -1.0 <= self.rho <= 1.0:
            raise ConfigurationError(f"rho must lie in [-1, 1], got {self.rho}")
        if self.T <= 0:
            raise ConfigurationError(f"T must be positive, got {self.T}")
        if self.d < 1 or self.substeps < 1 or self.n_vol_paths < 1 or self.chunk_size < 1:
            raise ConfigurationError(
                "d, substeps, n_vol_paths and chunk_size must all be at least 1"
            )
        if self.S0 <= 0 or self.K < 0 or self.V0 < 0 or self.theta < 0:
            raise ConfigurationError("S0 must be positive and K, V0, theta non-negative")
        if self.kappa < 0 or self.sigma_v < 0:
            raise ConfigurationError("kappa and sigma_v must be non-negative")

        if not self.satisfies_feller:
            message = (
                f"Feller condition violated: 2*kappa*theta = {2 * self.kappa * self.theta:.4g} "
                f"<= sigma_v^2 = {self.sigma_v ** 2:.4g}"
            )
            if self.strict_feller:
                raise ConfigurationError(message)
            logger.warning(message)

    @property
    def satisfies_feller(self):
        if self.sigma_v == 0:
            return True
        return 2.0 * self.kappa * self.theta > self.sigma_v**2

    @property
    def dt(self):
        return self.T / self.d


class HestonModel(ModelFunction):
    """Discounted arithmetic-Asian payoff, averaged over inner volatility paths.

    The input ``z`` holds the standard-normal increments of the asset-driving
    Brownian motion over the monitoring intervals; they are scaled by
    ``sqrt(T/d)`` internally. Within an interval the asset path is filled in
    with a Brownian bridge so that its increments sum to the supplied value.
    """

    name = "heston"
    description = (
        "Arithmetic Asian call under the Heston model, conditional on the asset-driving increments"
    )

    def __init__(self, config=None):
        self.config = config or HestonConfig()
        super().__init__(InputDistribution.standard_normal(self.config.d))

    @classmethod
    def from_config(cls, params):
        return cls(HestonConfig(**params))

    @property
    def stochastic(self):
        return True

    def _inner_normals(self, rng, n, m):
        cfg = self.config
        if not cfg.antithetic:
            return rng.standard_normal((n, cfg.n_vol_paths, m))
        half = (cfg.n_vol_paths + 1) // 2
        xi = rng.standard_normal((n, half, m))
        return np.concatenate([xi, -xi], axis=1)[:, : cfg.n_vol_paths, :]

    def _simulate_chunk(self, points, rng):
        cfg = self.config
        n = points.shape[0]
        m = cfg.substeps
        h = cfg.dt / m
        sqrt_h = np.sqrt(h)
        orth = np.sqrt(max(1.0 - cfg.rho**2, 0.0))
        interval = np.sqrt(cfg.dt) * points

        log_s = np.full((n, cfg.n_vol_paths), np.log(cfg.S0))
        v = np.full((n, cfg.n_vol_paths), cfg.V0)
        prices = np.empty((n, cfg.n_vol_paths, cfg.d))

        for i in range(cfg.d):
            xi = self._inner_normals(rng, n, m)
            bridge = sqrt_h * (xi - xi.mean(axis=2, keepdims=True))
            dw1 = interval[:, i, None, None] / m + bridge
            dw2 = cfg.rho * dw1 + orth * sqrt_h * self._inner_normals(rng, n, m)
            for k in range(m):
                v_pos = np.maximum(v, 0.0)
                sqrt_v = np.sqrt(v_pos)
                log_s += (cfg.r - 0.5 * v_pos) * h + sqrt_v * dw1[:, :, k]
                v = v + cfg.kappa * (cfg.theta - v_pos) * h + cfg.sigma_v * sqrt_v * dw2[:, :, k]
            prices[:, :, i] = np.exp(log_s)
        return prices

    def simulate(self, points, rng):
        """Monitored asset prices with shape ``(n, n_vol_paths, d)``."""
        points = self.distribution.check_points(points)
        chunk = self.config.chunk_size
        parts = []
        for start in range(0, points.shape[0], chunk):
            logger.debug(f"Simulating Heston paths {start}..{min(start + chunk, points.shape[0])}")
            parts.append(self._simulate_chunk(points[start : start + chunk], rng))
        return np.concatenate(parts, axis=0)

    def _evaluate(self, points, rng):
        cfg = self.config
        prices = self.simulate(points, rng)
        payoff = np.maximum(prices.mean(axis=2) - cfg.K, 0.0)
        return np.exp(-cfg.r * cfg.T) * payoff.mean(axis=1)

    def parameters(self):
        params = asdict(self.config)
        params.pop("chunk_size")
        return params


def asian_heston_eval(cfg, z, rng):
    return HestonModel(cfg)(z, rng)
