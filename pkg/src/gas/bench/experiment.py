import logging
from dataclasses import asdict, dataclass, field, replace
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np

from ..errors import ConfigurationError
from ..types import COMPANION_SEQUENCES

logger = logging.getLogger(__name__)

D1_RULES = ("eigen", "gamma")


class EstimatorKind(str, Enum):
    MC = "MC"
    PCE = "PCE"
    AS_PCE = "AS_PCE"
    GAS_PCE = "GAS_PCE"

    @property
    def uses_subspace(self):
        return self in (EstimatorKind.AS_PCE, EstimatorKind.GAS_PCE)


@dataclass(frozen=True)
class ExperimentConfig:
    """One estimator run: model, sample sizes, replications and seed.

    ``M`` is the AS gradient sample size (defaults to ``M1 * M2`` so both
    subspace methods see the same budget). ``d1`` fixes the active dimension;
    when it is unset, ``d1_rule`` picks it from the eigenvalue or Gamma gaps.
    """

    model: Dict[str, Any]
    estimator: EstimatorKind
    master_seed: int
    N: int = 10_000
    N1: int = 1
    K: int = 40
    p: int = 3
    M1: Optional[int] = None
    M2: Optional[int] = None
    M: Optional[int] = None
    h: Optional[float] = None
    d1: Optional[int] = None
    d1_rule: str = "eigen"
    companion_sequence: str = "restart"
    output_dir: Optional[str] = None

    def __post_init__(self):
        try:
            object.__setattr__(self, "estimator", EstimatorKind(self.estimator))
        except ValueError:
            raise ConfigurationError(
                f"Unknown estimator '{self.estimator}'. "
                f"Available: {', '.join(k.value for k in EstimatorKind)}"
            )
        if self.master_seed is None:
            raise ConfigurationError("A master seed is required")
        if not isinstance(self.model, dict) or "model" not in self.model:
            raise ConfigurationError("model must be a mapping with a 'model' entry")
        for name in ("N", "N1", "K"):
            if getattr(self, name) < 1:
                raise ConfigurationError(f"{name} must be at least 1, got {getattr(self, name)}")
        if self.p < 0:
            raise ConfigurationError(f"PCE degree must be non-negative, got {self.p}")
        if self.d1 is not None and self.d1 < 1:
            raise ConfigurationError(f"d1 must be at least 1, got {self.d1}")
        if self.d1_rule not in D1_RULES:
            raise ConfigurationError(f"d1_rule must be one of {D1_RULES}, got '{self.d1_rule}'")
        if self.companion_sequence not in COMPANION_SEQUENCES:
            raise ConfigurationError(
                f"companion_sequence must be one of {COMPANION_SEQUENCES}, "
                f"got '{self.companion_sequence}'"
            )

        if self.estimator is EstimatorKind.GAS_PCE or self.d1_rule == "gamma":
            if self.M1 is None or self.M2 is None:
                raise ConfigurationError(f"{self.estimator.value} needs M1 and M2")
            if self.M1 < 1 or self.M2 < 1:
                raise ConfigurationError("M1 and M2 must be at least 1")
        if self.estimator is EstimatorKind.AS_PCE:
            if self.h is None or not self.h > 0:
                raise ConfigurationError("AS_PCE needs a positive increment h")
            if self.as_samples is None or self.as_samples < 1:
                raise ConfigurationError("AS_PCE needs M (or M1 and M2) for the gradient sample")

    @property
    def as_samples(self):
        if self.M is not None:
            return self.M
        if self.M1 is not None and self.M2 is not None:
            return self.M1 * self.M2
        return None

    @property
    def model_id(self):
        return str(self.model["model"])

    def with_estimator(self, estimator, **changes):
        return replace(self, estimator=EstimatorKind(estimator), **changes)

    def with_model(self, **params):
        return replace(self, model={**self.model, **params})

    def to_dict(self):
        data = asdict(self)
        data["estimator"] = self.estimator.value
        data.pop("output_dir")
        return data


def validate_budget(gas_cfg, as_cfg):
    """Require equal function-evaluation budgets for a GAS vs AS comparison."""
    if gas_cfg.M1 is None or gas_cfg.M2 is None:
        raise ConfigurationError("The GAS configuration needs M1 and M2")
    if gas_cfg.M1 * gas_cfg.M2 != as_cfg.as_samples:
        raise ConfigurationError(
            f"Unequal budgets: GAS uses M1*M2 = {gas_cfg.M1 * gas_cfg.M2} base/companion pairs, "
            f"AS uses M = {as_cfg.as_samples} gradient samples"
        )


def mse(estimates, truth):
    """Mean squared error of replicated estimates against ``truth``."""
    estimates = np.asarray(estimates, dtype=float).reshape(-1)
    if estimates.size == 0:
        raise ConfigurationError("mse needs at least one estimate")
    return float(np.mean((estimates - truth) ** 2))


def efficiency(wall_time, mse_value):
    """``1 / (time * mse)``; infinite when the error is zero."""
    if mse_value is None or not np.isfinite(mse_value):
        return float("nan")
    if mse_value == 0 or wall_time == 0:
        return float("inf")
    return 1.0 / (wall_time * mse_value)


@dataclass
class EstimatorResult:
    config: ExperimentConfig
    estimates: np.ndarray
    wall_time: float
    reference: Optional[float] = None
    reference_error: Optional[float] = None
    failures: List[Dict[str, Any]] = field(default_factory=list)
    d1: Optional[int] = None
    spectrum: Optional[List[float]] = None
    surrogate: Optional[Any] = None

    @property
    def successful(self):
        return self.estimates[np.isfinite(self.estimates)]

    @property
    def mse(self):
        if self.reference is None or self.successful.size == 0:
            return None
        return mse(self.successful, self.reference)

    @property
    def efficiency(self):
        return efficiency(self.wall_time, self.mse)

    def to_dict(self):
        """Seed-determined fields only; timing goes through :meth:`timing_dict`."""
        return {
            "config": self.config.to_dict(),
            "estimates": self.estimates.tolist(),
            "mean": float(self.successful.mean()) if self.successful.size else None,
            "reference": self.reference,
            "reference_error": self.reference_error,
            "mse": self.mse,
            "d1": self.d1,
            "spectrum": self.spectrum,
            "failures": self.failures,
        }

    def timing_dict(self):
        return {"wall_time": self.wall_time, "efficiency": self.efficiency}


@dataclass
class HeatmapGrid:
    sigma_values: List[float]
    rho_values: List[float]
    mse_ratio: np.ndarray
    eff_ratio: np.ndarray
    gas_mse: np.ndarray
    as_mse: np.ndarray

    def __post_init__(self):
        shape = (len(self.sigma_values), len(self.rho_values))
        for name in ("mse_ratio", "eff_ratio", "gas_mse", "as_mse"):
            if np.shape(getattr(self, name)) != shape:
                raise ConfigurationError(f"{name} must have shape {shape}")

    def rows(self):
        """``(sigma, rho, mse_ratio, eff_ratio)`` in sigma-major order."""
        return [
            (sigma, rho, float(self.mse_ratio[i, j]), float(self.eff_ratio[i, j]))
            for i, sigma in enumerate(self.sigma_values)
            for j, rho in enumerate(self.rho_values)
        ]

    def to_dict(self):
        return {
            "sigma_values": list(self.sigma_values),
            "rho_values": list(self.rho_values),
            "mse_ratio": self.mse_ratio.tolist(),
            "gas_mse": self.gas_mse.tolist(),
            "as_mse": self.as_mse.tolist(),
        }

    def timing_dict(self):
        return {
            "sigma_values": list(self.sigma_values),
            "rho_values": list(self.rho_values),
            "eff_ratio": self.eff_ratio.tolist(),
        }
