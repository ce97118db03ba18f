from dataclasses import astuple, dataclass, fields

import numpy as np

from ..errors import ConfigurationError, DomainError
from ..sampling import InputDistribution
from .base import ModelFunction

# Liberia parameter ranges; each input coordinate is mapped affinely onto one row.
LIBERIA_RANGES = {
    "beta1": (0.1, 0.4),
    "beta2": (0.1, 0.4),
    "beta3": (0.05, 0.2),
    "rho1": (0.41, 1.0),
    "gamma1": (0.0276, 0.1702),
    "gamma2": (0.081, 0.21),
    "omega": (0.25, 0.5),
    "psi": (0.0833, 0.7),
}

DENOMINATOR_FIELDS = ("gamma1", "gamma2", "omega", "psi")


@dataclass(frozen=True)
class EbolaParams:
    beta1: float
    beta2: float
    beta3: float
    rho1: float
    gamma1: float
    gamma2: float
    omega: float
    psi: float

    def __post_init__(self):
        for field in fields(self):
            value = getattr(self, field.name)
            if not np.isfinite(value) or value < 0:
                raise DomainError(f"Ebola parameter {field.name} must be non-negative, got {value}")
            if field.name in DENOMINATOR_FIELDS and value <= 0:
                raise DomainError(f"Ebola parameter {field.name} must be positive, got {value}")


def _r0(beta1, beta2, beta3, rho1, gamma1, gamma2, omega, psi):
    return (beta1 + beta2 * rho1 * gamma1 / omega + beta3 * psi / gamma2) / (gamma1 + psi)


def ebola_r0(p):
    """Basic reproduction number of the transmission model."""
    return float(_r0(*astuple(p)))


class EbolaModel(ModelFunction):
    """Basic reproduction number with parameters mapped from the unit cube."""

    name = "ebola"
    description = "Ebola basic reproduction number R0 over the Liberia parameter ranges"

    def __init__(self, ranges=None):
        ranges = dict(LIBERIA_RANGES if ranges is None else ranges)
        missing = [name for name in LIBERIA_RANGES if name not in ranges]
        if missing:
            raise ConfigurationError(f"Missing Ebola parameter ranges: {', '.join(missing)}")
        for name, (low, high) in ranges.items():
            if not low < high:
                raise ConfigurationError(f"Empty range for {name}: ({low}, {high})")
            if name in DENOMINATOR_FIELDS and low < 0:
                raise ConfigurationError(f"Range for {name} must be non-negative")

        super().__init__(InputDistribution.unit_uniform(len(LIBERIA_RANGES)))
        self.ranges = {name: tuple(ranges[name]) for name in LIBERIA_RANGES}
        bounds = np.array(list(self.ranges.values()), dtype=float)
        self.lower = bounds[:, 0]
        self.width = bounds[:, 1] - bounds[:, 0]

    @classmethod
    def from_config(cls, params):
        ranges = params.get("ranges")
        return cls({k: tuple(v) for k, v in ranges.items()} if ranges else None)

    def map_unit_cube(self, points):
        """Affine map of ``(n, 8)`` unit-cube points to parameter values."""
        points = self.distribution.check_points(points)
        if np.any(points <= 0.0) or np.any(points >= 1.0):
            raise DomainError("Ebola inputs must lie in the open unit cube (0, 1)^8")
        return self.lower + points * self.width

    def params_at(self, z):
        return EbolaParams(*self.map_unit_cube(z)[0])

    def _evaluate(self, points, rng):
        return _r0(*self.map_unit_cube(points).T)

    def parameters(self):
        return {"ranges": {name: list(bounds) for name, bounds in self.ranges.items()}}

    def range_table(self):
        """Rows of ``(parameter, lower, upper)`` for display."""
        return [(name, low, high) for name, (low, high) in self.ranges.items()]


def ebola_from_unit_cube(z):
    return EbolaModel()(z)
