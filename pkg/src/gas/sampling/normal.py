import numpy as np
from scipy import special

from ..errors import DomainError


def _as_output(values):
    return float(values) if np.ndim(values) == 0 else values


def norm_cdf(x):
    """Standard normal CDF for a scalar or array."""
    return _as_output(special.ndtr(np.asarray(x, dtype=float)))


def norm_quantile(u):
    """Inverse of :func:`norm_cdf` on the open interval (0, 1).

    Raises:
        DomainError: If any value lies outside (0, 1) or is NaN
    """
    u = np.asarray(u, dtype=float)
    inside = (u > 0.0) & (u < 1.0)
    if not np.all(inside):
        bad = u[~inside] if u.ndim else u
        raise DomainError(f"Normal quantile is defined on (0, 1); got {np.ravel(bad)[0]!r}")
    return _as_output(special.ndtri(u))
