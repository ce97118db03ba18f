from .distribution import DistributionKind, InputDistribution
from .normal import norm_cdf, norm_quantile
from .sobol import (
    SobolGenerator,
    load_direction_table,
    shift_mod1,
    shifted_sobol_points,
    sobol_next,
    sobol_points,
)
from .streams import RngStream, sample_matrix

__all__ = [
    "DistributionKind",
    "InputDistribution",
    "RngStream",
    "SobolGenerator",
    "load_direction_table",
    "norm_cdf",
    "norm_quantile",
    "sample_matrix",
    "shift_mod1",
    "shifted_sobol_points",
    "sobol_next",
    "sobol_points",
]
