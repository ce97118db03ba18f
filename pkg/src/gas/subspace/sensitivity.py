import logging

import numpy as np

from ..errors import DegenerateFunctionError, DomainError
from ..sampling import sample_matrix
from .estimation import resolve_stream
from .finite_diff import coordinate_companions

logger = logging.getLogger(__name__)

VARIANCE_FLOOR = 1e-14


class SobolIndexEstimate:
    """Upper Sobol' indices with per-index standard errors and the variance estimate."""

    def __init__(self, indices, standard_errors, variance, M):
        self.indices = np.asarray(indices, dtype=float)
        self.standard_errors = np.asarray(standard_errors, dtype=float)
        self.variance = float(variance)
        self.M = M

    def to_dict(self):
        return {
            "indices": self.indices.tolist(),
            "standard_errors": self.standard_errors.tolist(),
            "variance": self.variance,
            "M": self.M,
        }

    def __repr__(self):
        return f"SobolIndexEstimate(indices={np.array2string(self.indices, precision=4)})"


def _check_variance(variance, mean):
    if not variance > VARIANCE_FLOOR * max(1.0, mean**2):
        raise DegenerateFunctionError(f"Function variance {variance:.3e} is numerically zero")


def upper_sobol_indices(f, dist, M, rng=None, seed=None):
    """Upper (total-effect) Sobol' indices from one-coordinate resampling.

    ``S_i = E[(f(v_i : z_{-i}) - f(z))^2] / (2 Var f)`` with ``v`` an independent
    copy of ``z``.
    """
    if M < 2:
        raise DomainError(f"Need at least 2 samples, got {M}")
    rng = resolve_stream(rng, seed)
    sample_rng, eval_rng = rng.child(0), rng.child(1)

    Z = sample_matrix(dist, M, sample_rng)
    V = sample_matrix(dist, M, sample_rng)
    base = f.evaluate(Z, eval_rng)
    variance = base.var(ddof=1)
    _check_variance(variance, base.mean())

    d = dist.dimension
    values = f.evaluate(coordinate_companions(Z, V).reshape(M * d, d), eval_rng).reshape(M, d)
    squares = (values - base[:, np.newaxis]) ** 2
    scale = 2.0 * variance
    indices = squares.mean(axis=0) / scale
    errors = squares.std(axis=0, ddof=1) / np.sqrt(M) / scale
    logger.info(f"Upper Sobol' indices for '{f.name}': {np.array2string(indices, precision=3)}")
    return SobolIndexEstimate(indices, errors, variance, M)


def sobol_indices_from_bhat(bhat, variance):
    """Undivided-difference B-hat diagonal scaled into upper Sobol' indices."""
    bhat = np.asarray(bhat, dtype=float)
    _check_variance(variance, 0.0)
    return np.einsum("ij,ij->i", bhat, bhat) / (2.0 * variance)
