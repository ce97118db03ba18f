from .base import CallableModel, ModelFunction
from .catalog import MODELS, describe_model, model_from_config
from .ebola import LIBERIA_RANGES, EbolaModel, EbolaParams, ebola_from_unit_cube, ebola_r0
from .heston import HestonConfig, HestonModel, asian_heston_eval
from .quadratic import (
    QuadraticNoiseModel,
    default_spectrum,
    quadratic_eval,
    quadratic_gradient_oracle,
    random_orthogonal,
)
from .ridge import RidgeModel, ridge_eval

__all__ = [
    "CallableModel",
    "EbolaModel",
    "EbolaParams",
    "HestonConfig",
    "HestonModel",
    "LIBERIA_RANGES",
    "MODELS",
    "ModelFunction",
    "QuadraticNoiseModel",
    "RidgeModel",
    "asian_heston_eval",
    "default_spectrum",
    "describe_model",
    "ebola_from_unit_cube",
    "ebola_r0",
    "model_from_config",
    "quadratic_eval",
    "quadratic_gradient_oracle",
    "random_orthogonal",
    "ridge_eval",
]
