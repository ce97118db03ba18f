import logging

import numpy as np

from ..errors import DomainError, EstimationError
from ..sampling import norm_cdf, norm_quantile, sample_matrix, shift_mod1, sobol_points
from ..types import GammaEstimates
from .estimation import POINTS_PER_CHUNK, resolve_stream
from .finite_diff import DEFAULT_DENOM_FLOOR

logger = logging.getLogger(__name__)

CHORD_MARGIN = 1e-12


def _normal_steps(Z, u, offsets):
    s = Z @ u
    y = shift_mod1(offsets[np.newaxis, :], norm_cdf(s)[:, np.newaxis])
    inside = (y > 0.0) & (y < 1.0)
    target = norm_quantile(np.where(inside, y, 0.5))
    return np.where(inside, target - s[:, np.newaxis], np.nan)


def chord_bounds(Z, u):
    """Range ``(t_lo, t_hi)`` of ``t`` keeping ``z + t*u`` inside the open unit cube."""
    with np.errstate(divide="ignore", invalid="ignore"):
        a = np.where(u != 0, (0.0 - Z) / u, -np.inf)
        b = np.where(u != 0, (1.0 - Z) / u, np.inf)
    t_lo = np.minimum(a, b).max(axis=1)
    t_hi = np.maximum(a, b).min(axis=1)
    return t_lo, t_hi


def _uniform_steps(Z, u, offsets):
    t_lo, t_hi = chord_bounds(Z, u)
    width = t_hi - t_lo
    position = -t_lo / width
    y = shift_mod1(offsets[np.newaxis, :], position[:, np.newaxis])
    y = np.clip(y, CHORD_MARGIN, 1.0 - CHORD_MARGIN)
    return t_lo[:, np.newaxis] + y * width[:, np.newaxis]


def directional_steps(dist, Z, u, offsets):
    """Steps ``t`` along ``u`` from each base point, one per Sobol' offset.

    For normal inputs the new coordinate ``u^T z + t`` is the normal quantile of
    the offset shifted by ``Phi(u^T z)``. For unit-cube inputs ``t`` is spread
    over the chord of the cube through ``z`` in direction ``u``, shifted by the
    relative position of ``z`` on that chord.
    """
    if dist.is_normal:
        return _normal_steps(Z, u, offsets)
    return _uniform_steps(Z, u, offsets)


def estimate_gamma(
    f, dist, U, M1, M2, rng=None, seed=None, denom_floor=DEFAULT_DENOM_FLOOR, max_redraws=100
):
    """Mean squared directional difference quotient along each column of ``U``.

    The same Sobol' offsets (the 1-D sequence without its first value 0.5) are
    used for every base point. The recorded seed is the one of the stream in use.

    For non-linear models the estimates carry a second-order remainder that
    depends on the basis: on a quadratic ``z^T A z / 2`` each estimate exceeds
    ``u^T C u`` by a term of order ``E[t^2] (u^T A u)^2``, so the sum over an
    orthonormal basis is only basis-independent up to that remainder.

    Returns:
        GammaEstimates: One estimate per column of ``U``, with standard errors
    """
    U = np.asarray(U, dtype=float)
    d = dist.dimension
    if U.shape != (d, d):
        raise DomainError(f"U must be {d}x{d}, got shape {U.shape}")
    if not np.allclose(U.T @ U, np.eye(d), atol=1e-8):
        raise DomainError("U must have orthonormal columns")
    if M1 < 1 or M2 < 1:
        raise DomainError(f"M1 and M2 must be at least 1, got M1={M1}, M2={M2}")

    rng = resolve_stream(rng, seed)
    sample_rng, eval_rng = rng.child(0), rng.child(1)
    offsets = sobol_points(1, M2 + 1)[1:, 0]
    Z = sample_matrix(dist, M1, sample_rng)

    logger.info(f"Estimating Gamma for '{f.name}': d={d}, M1={M1}, M2={M2}")
    gammas = np.empty(d)
    errors = np.empty(d)
    for i in range(d):
        u = U[:, i]
        Zi = Z.copy()
        T = directional_steps(dist, Zi, u, offsets)
        pending = np.flatnonzero((~np.isfinite(T) | (np.abs(T) < denom_floor)).any(axis=1))
        attempts = 0
        while pending.size:
            attempts += 1
            if attempts > max_redraws:
                raise EstimationError(
                    f"Direction {i + 1}: {pending.size} base points still give steps below "
                    f"{denom_floor:.1e} after {max_redraws} redraws"
                )
            Zi[pending] = sample_matrix(dist, pending.size, sample_rng)
            T[pending] = directional_steps(dist, Zi[pending], u, offsets)
            bad = (~np.isfinite(T[pending]) | (np.abs(T[pending]) < denom_floor)).any(axis=1)
            pending = pending[bad]

        base = f.evaluate(Zi, eval_rng)
        rows = max(1, POINTS_PER_CHUNK // M2)
        chunks = []
        for start in range(0, M1, rows):
            block = slice(start, start + rows)
            moved = Zi[block, np.newaxis, :] + T[block, :, np.newaxis] * u
            chunks.append(f.evaluate(moved.reshape(-1, d), eval_rng).reshape(-1, M2))
        values = np.concatenate(chunks, axis=0)
        quotients = (values - base[:, np.newaxis]) / T
        squares = (quotients**2).reshape(-1)
        gammas[i] = squares.mean()
        errors[i] = squares.std(ddof=1) / np.sqrt(squares.size) if squares.size > 1 else 0.0
        logger.debug(f"Gamma_{i + 1} = {gammas[i]:.6g}")

    return GammaEstimates(
        gammas, errors, M1=M1, M2=M2, seed=rng.seed, fingerprint=f.fingerprint()
    )
