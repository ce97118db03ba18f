import logging

import numpy as np
from scipy import linalg

from ..errors import ConfigurationError, DomainError, EstimationError, NumericalError
from ..sampling import RngStream, SobolGenerator, norm_quantile, sample_matrix, shift_mod1
from ..types import SubspaceDecomposition
from .finite_diff import difference_rows

logger = logging.getLogger(__name__)

NEGATIVE_EIGENVALUE_TOLERANCE = 1e-10
POINTS_PER_CHUNK = 200_000


def resolve_stream(rng, seed):
    if rng is not None:
        return rng
    if seed is None:
        raise ConfigurationError("Either an RngStream or a seed is required")
    return RngStream(seed)


def normalize_signs(U):
    """Flip columns so that each column's largest-magnitude entry is positive."""
    U = np.array(U, dtype=float)
    if U.size == 0:
        return U
    pivots = U[np.argmax(np.abs(U), axis=0), np.arange(U.shape[1])]
    signs = np.where(pivots < 0, -1.0, 1.0)
    return U * signs


def clamp_spectrum(lambdas):
    """Set tiny negative eigenvalues to zero; reject clearly negative ones."""
    lambdas = np.asarray(lambdas, dtype=float)
    if np.any(lambdas < -NEGATIVE_EIGENVALUE_TOLERANCE):
        raise NumericalError(f"Negative eigenvalue {lambdas.min():.3e} in a PSD matrix")
    clamped = lambdas < 0
    if np.any(clamped):
        logger.warning(f"Clamped {int(clamped.sum())} slightly negative eigenvalues to zero")
    return np.where(clamped, 0.0, lambdas)


def _companions(dist, Z, X):
    """Companion points from base points ``Z`` and Sobol' points ``X`` of shape (m, M2, d).

    The shift is the marginal CDF of the base point. Entries whose shifted
    value falls on the boundary of (0, 1) come back as NaN.
    """
    Y = shift_mod1(X, dist.cdf(Z)[:, np.newaxis, :])
    if dist.is_normal:
        inside = (Y > 0.0) & (Y < 1.0)
        V = norm_quantile(np.where(inside, Y, 0.5))
        return np.where(inside, V, np.nan)
    return np.where(Y == 0.0, np.nextafter(0.0, 1.0), Y)


def _invalid_rows(Z, V, floor):
    gaps = np.abs(V - Z[:, np.newaxis, :])
    bad = ~np.isfinite(gaps) | (gaps < floor)
    return np.flatnonzero(bad.reshape(bad.shape[0], -1).any(axis=1))


def draw_companion_design(dist, cfg, rng):
    """Base points ``Z`` (M1, d) and shifted-Sobol' companions ``V`` (M1, M2, d).

    Rows whose companions come too close to the base point are redrawn.

    Raises:
        EstimationError: If a row still fails after ``cfg.max_redraws`` redraws
    """
    d = dist.dimension
    Z = sample_matrix(dist, cfg.M1, rng)
    gen = SobolGenerator(d)
    restart_points = None
    if cfg.companion_sequence == "restart":
        restart_points = gen.draw(cfg.M2)
        X = np.broadcast_to(restart_points, (cfg.M1, cfg.M2, d))
    else:
        X = gen.draw(cfg.M1 * cfg.M2).reshape(cfg.M1, cfg.M2, d)
    V = _companions(dist, Z, X)

    pending = _invalid_rows(Z, V, cfg.denom_floor)
    attempts = 0
    while pending.size:
        attempts += 1
        if attempts > cfg.max_redraws:
            raise EstimationError(
                f"{pending.size} base points still violate the denominator floor "
                f"{cfg.denom_floor:.1e} after {cfg.max_redraws} redraws"
            )
        logger.warning(f"Redrawing {pending.size} base points (attempt {attempts})")
        Z[pending] = sample_matrix(dist, pending.size, rng)
        if restart_points is not None:
            X_new = np.broadcast_to(restart_points, (pending.size, cfg.M2, d))
        else:
            X_new = gen.draw(pending.size * cfg.M2).reshape(pending.size, cfg.M2, d)
        V[pending] = _companions(dist, Z[pending], X_new)
        retry = _invalid_rows(Z[pending], V[pending], cfg.denom_floor)
        pending = pending[retry]
    return Z, V


def assemble_bhat(f, dist, cfg, rng=None, divided=True):
    """Scaled finite-difference matrix whose Gram matrix is the GAS estimate of C.

    Args:
        f: Model to differentiate
        dist: Input distribution (usually ``f.distribution``)
        cfg: GasConfig with the sample sizes
        rng: Stream for sampling and evaluation (``cfg.seed`` is used if omitted)
        divided: Divide differences by ``v_i - z_i``; ``False`` gives the
            undivided differences behind the upper Sobol' indices

    Returns:
        np.ndarray: ``d x (M1*M2)`` matrix, column ``(i, j)`` holding the
        difference vector for base point ``i`` and companion ``j``
    """
    rng = resolve_stream(rng, cfg.seed)
    sample_rng, eval_rng = rng.child(0), rng.child(1)
    d = dist.dimension

    logger.info(f"Assembling B-hat for '{f.name}': d={d}, M1={cfg.M1}, M2={cfg.M2}")
    Z, V = draw_companion_design(dist, cfg, sample_rng)
    base = f.evaluate(Z, eval_rng)

    rows_per_chunk = max(1, POINTS_PER_CHUNK // (cfg.M2 * d))
    blocks = []
    for start in range(0, cfg.M1, rows_per_chunk):
        stop = min(start + rows_per_chunk, cfg.M1)
        logger.debug(f"Finite differences for base points {start}..{stop}")
        z_rows = np.repeat(Z[start:stop], cfg.M2, axis=0)
        v_rows = V[start:stop].reshape(-1, d)
        base_rows = np.repeat(base[start:stop], cfg.M2)
        blocks.append(difference_rows(f, z_rows, v_rows, base_rows, eval_rng, divided))

    D = np.concatenate(blocks, axis=0)
    return D.T / np.sqrt(cfg.M1 * cfg.M2)


def decompose(bhat, d1_hint=None):
    """SVD of ``bhat`` as a SubspaceDecomposition with ``lambdas = s**2``."""
    bhat = np.asarray(bhat, dtype=float)
    if bhat.ndim != 2:
        raise DomainError(f"B-hat must be a matrix, got shape {bhat.shape}")
    if not np.all(np.isfinite(bhat)):
        raise DomainError("B-hat contains non-finite entries")

    d, n = bhat.shape
    if n < d:
        bhat = np.hstack([bhat, np.zeros((d, d - n))])
    try:
        U, s, _ = linalg.svd(bhat, full_matrices=False)
    except linalg.LinAlgError as e:
        raise NumericalError(f"SVD did not converge: {e}") from e

    return SubspaceDecomposition(normalize_signs(U), s**2, d1=d1_hint)


def decompose_symmetric(C, d1_hint=None):
    """Eigendecomposition of a symmetric PSD matrix, descending order."""
    C = np.asarray(C, dtype=float)
    try:
        lambdas, U = linalg.eigh(0.5 * (C + C.T))
    except linalg.LinAlgError as e:
        raise NumericalError(f"Eigendecomposition did not converge: {e}") from e
    order = np.argsort(lambdas)[::-1]
    return SubspaceDecomposition(
        normalize_signs(U[:, order]), clamp_spectrum(lambdas[order]), d1=d1_hint
    )


def gas_subspace(f, cfg, rng=None, dist=None, d1=None):
    """Assemble B-hat and decompose it, recording sample sizes and the model fingerprint."""
    dist = dist or f.distribution
    bhat = assemble_bhat(f, dist, cfg, rng)
    decomp = decompose(bhat, d1)
    decomp.M1, decomp.M2, decomp.seed = cfg.M1, cfg.M2, cfg.seed
    decomp.fingerprint = f.fingerprint()
    logger.info(
        f"GAS spectrum for '{f.name}': "
        f"{np.array2string(decomp.normalized(), precision=3)}"
    )
    return decomp


def select_d1(values):
    """Active dimension at the largest gap between consecutive values."""
    values = np.asarray(values, dtype=float).reshape(-1)
    if values.size < 2:
        raise DomainError(f"select_d1 needs at least 2 values, got {values.size}")
    gaps = values[:-1] - values[1:]
    return int(np.argmax(gaps)) + 1


def as_gradient_matrix(f, dist, M, h, rng=None, seed=None):
    """Active-subspace matrix from forward-difference gradients.

    On the unit cube, coordinates within ``h`` of the upper face step backward
    so that every evaluation stays inside the domain.

    Returns:
        tuple: ``(C, SubspaceDecomposition)``
    """
    if not h > 0:
        raise ConfigurationError(f"Finite-difference increment must be positive, got {h}")
    if M < 1:
        raise ConfigurationError(f"Sample size must be at least 1, got {M}")
    rng = resolve_stream(rng, seed)
    sample_rng, eval_rng = rng.child(0), rng.child(1)

    logger.info(f"Assembling AS matrix for '{f.name}': M={M}, h={h:g}")
    Z = sample_matrix(dist, M, sample_rng)
    base = f.evaluate(Z, eval_rng)
    steps = np.full(Z.shape, float(h))
    if not dist.is_normal:
        steps = np.where(Z + h >= 1.0, -float(h), steps)

    d = dist.dimension
    rows_per_chunk = max(1, POINTS_PER_CHUNK // d)
    grads = []
    for start in range(0, M, rows_per_chunk):
        stop = min(start + rows_per_chunk, M)
        z_rows = Z[start:stop]
        grads.append(
            difference_rows(f, z_rows, z_rows + steps[start:stop], base[start:stop], eval_rng)
        )
    G = np.concatenate(grads, axis=0)

    C = G.T @ G / M
    decomp = decompose_symmetric(C)
    decomp.M1, decomp.M2 = M, None
    decomp.fingerprint = f.fingerprint()
    return C, decomp


def first_eigenvector_cosine(u, v):
    """Absolute cosine between two directions (sign-insensitive)."""
    u = np.asarray(u, dtype=float).reshape(-1)
    v = np.asarray(v, dtype=float).reshape(-1)
    norm = np.linalg.norm(u) * np.linalg.norm(v)
    if norm == 0:
        raise DomainError("Cosine is undefined for a zero vector")
    return float(abs(u @ v) / norm)
