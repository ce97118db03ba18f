import logging

import numpy as np

from ..errors import DimensionMismatchError, DomainError, UnsupportedOperationError
from .estimation import resolve_stream

logger = logging.getLogger(__name__)


def _check_gaussian(f):
    if not f.distribution.is_normal:
        raise UnsupportedOperationError(
            "Conditional surrogates need standard normal inputs, "
            f"model '{f.name}' has {f.distribution.kind.value}"
        )


def conditional_surrogate_values(f, decomp, W1, N1, rng=None, seed=None):
    """Monte Carlo estimates of ``E[f(U1 w1 + U2 w2)]`` over ``w2 ~ N(0, I)``.

    Args:
        f: Model with standard normal inputs
        decomp: Decomposition with ``d1`` chosen
        W1: ``(n, d1)`` active coordinates
        N1: Inner samples per active point
        rng: Stream for the inactive draws and model noise
        seed: Seed for a fresh stream when ``rng`` is omitted

    Returns:
        np.ndarray: ``(n,)`` surrogate values
    """
    _check_gaussian(f)
    rng = resolve_stream(rng, seed)
    if N1 < 1:
        raise DomainError(f"N1 must be at least 1, got {N1}")
    if decomp.d1 is None:
        raise DomainError("Active dimension d1 has not been chosen for this decomposition")
    d1 = decomp.d1
    W1 = np.asarray(W1, dtype=float)
    if W1.ndim == 1 and d1 == 1:
        W1 = W1[:, np.newaxis]
    if W1.ndim != 2 or W1.shape[1] != d1:
        raise DimensionMismatchError(
            f"Active coordinates have shape {W1.shape}, decomposition has d1={d1}"
        )

    n, d = W1.shape[0], decomp.dimension
    active = W1 @ decomp.U1.T
    if d1 == d:
        return f.evaluate(active, rng)

    inactive = rng.standard_normal((n, N1, d - d1)) @ decomp.U2.T
    points = (active[:, np.newaxis, :] + inactive).reshape(n * N1, d)
    return f.evaluate(points, rng).reshape(n, N1).mean(axis=1)


def conditional_surrogate_eval(f, decomp, w1, N1, rng=None, seed=None):
    """Single-point form of :func:`conditional_surrogate_values`."""
    return float(conditional_surrogate_values(f, decomp, np.atleast_2d(w1), N1, rng, seed)[0])
