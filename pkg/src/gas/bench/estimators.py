import logging
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..errors import ConfigurationError
from ..models import model_from_config
from ..pce import BasisKind, basis_for, fit_pce
from ..sampling import RngStream, sample_matrix
from ..subspace import (
    as_gradient_matrix,
    conditional_surrogate_values,
    estimate_gamma,
    gas_subspace,
    select_d1,
)
from ..types import GasConfig
from .experiment import EstimatorKind, EstimatorResult

logger = logging.getLogger(__name__)

REFERENCE_MIN_SAMPLES = 100_000
REFERENCE_CHUNK = 100_000


def reference_value(model, n, rng, min_n=REFERENCE_MIN_SAMPLES):
    """Plain Monte Carlo mean of ``model`` over ``n`` input draws.

    Returns:
        tuple: ``(mean, standard_error)``
    """
    if n < min_n:
        raise ConfigurationError(f"Reference value needs at least {min_n} samples, got {n}")

    sample_rng, eval_rng = rng.child(0), rng.child(1)
    total, total_sq = 0.0, 0.0
    for start in range(0, int(n), REFERENCE_CHUNK):
        size = min(REFERENCE_CHUNK, int(n) - start)
        values = model.evaluate(sample_matrix(model.distribution, size, sample_rng), eval_rng)
        total += values.sum()
        total_sq += np.sum(values**2)

    mean = total / n
    variance = max(total_sq / n - mean**2, 0.0) * n / max(n - 1, 1)
    error = float(np.sqrt(variance / n))
    logger.info(f"Reference value for '{model.name}': {mean:.6g} +/- {error:.2g} (n={n})")
    return float(mean), error


def choose_d1(model, decomp, cfg, rng):
    """Active dimension from the config, or from the largest spectral/Gamma gap."""
    if cfg.d1 is not None:
        if cfg.d1 > decomp.dimension:
            raise ConfigurationError(f"d1={cfg.d1} exceeds the dimension {decomp.dimension}")
        return cfg.d1
    if decomp.dimension == 1:
        return 1
    if cfg.d1_rule == "gamma":
        gammas = estimate_gamma(model, model.distribution, decomp.U, cfg.M1, cfg.M2, rng)
        return select_d1(gammas.normalized())
    return select_d1(decomp.normalized())


def build_subspace(model, cfg, rng):
    """Directions used by the AS_PCE / GAS_PCE surrogates, with ``d1`` chosen."""
    if cfg.estimator is EstimatorKind.GAS_PCE:
        gas_cfg = GasConfig(
            M1=cfg.M1,
            M2=cfg.M2,
            seed=cfg.master_seed,
            companion_sequence=cfg.companion_sequence,
        )
        decomp = gas_subspace(model, gas_cfg, rng.child(0))
    else:
        _, decomp = as_gradient_matrix(
            model, model.distribution, cfg.as_samples, cfg.h, rng.child(0)
        )
    d1 = choose_d1(model, decomp, cfg, rng.child(1))
    logger.info(f"{cfg.estimator.value}: chose d1={d1} for '{model.name}'")
    return decomp.with_d1(d1)


def replicate(model, cfg, decomp, rng):
    """One replication of the estimator.

    Returns:
        tuple: ``(estimate, surrogate)``; the surrogate is None for MC
    """
    if cfg.estimator is EstimatorKind.MC:
        Z = sample_matrix(model.distribution, cfg.N, rng.child(0))
        return float(model.evaluate(Z, rng.child(1)).mean()), None

    if cfg.estimator is EstimatorKind.PCE:
        Z = sample_matrix(model.distribution, cfg.N, rng.child(0))
        y = model.evaluate(Z, rng.child(1))
        surrogate = fit_pce(Z, y, basis_for(model.distribution), cfg.p)
        return surrogate.mean(), surrogate

    W1 = rng.child(0).standard_normal((cfg.N, decomp.d1))
    y = conditional_surrogate_values(model, decomp, W1, cfg.N1, rng.child(1))
    surrogate = fit_pce(W1, y, BasisKind.HERMITE, cfg.p)
    return surrogate.mean(), surrogate


def run_estimator(cfg, model=None, reference=None, reference_error=None, workers=1):
    """Run ``cfg.K`` replications of one estimator.

    The subspace (for AS_PCE / GAS_PCE) is built once and shared by the
    replications; each replication ``l`` draws from ``RngStream(seed).child(1).child(l)``.
    Wall time covers everything, subspace construction included. A failed
    replication is logged, recorded and reported as NaN.
    """
    model = model or model_from_config(cfg.model)
    master = RngStream(cfg.master_seed)
    logger.info(
        f"Running {cfg.estimator.value} on '{model.name}': K={cfg.K}, N={cfg.N}, p={cfg.p}"
    )

    start = time.perf_counter()
    decomp = build_subspace(model, cfg, master.child(0)) if cfg.estimator.uses_subspace else None
    streams = master.child(1)

    def task(l):
        try:
            estimate, surrogate = replicate(model, cfg, decomp, streams.child(l))
            return estimate, surrogate, None
        except Exception as e:
            logger.exception(f"Replication {l} of {cfg.estimator.value} failed: {str(e)}")
            return float("nan"), None, {"replication": l, "error": str(e)}

    with ThreadPoolExecutor(max_workers=max(1, int(workers))) as pool:
        outcomes = list(pool.map(task, range(cfg.K)))
    wall_time = time.perf_counter() - start

    estimates = np.array([value for value, _, _ in outcomes], dtype=float)
    failures = [failure for _, _, failure in outcomes if failure is not None]
    surrogate = next((s for _, s, _ in outcomes if s is not None), None)
    result = EstimatorResult(
        config=cfg,
        estimates=estimates,
        wall_time=wall_time,
        reference=reference,
        reference_error=reference_error,
        failures=failures,
        d1=None if decomp is None else decomp.d1,
        spectrum=None if decomp is None else decomp.normalized().tolist(),
        surrogate=surrogate,
    )
    logger.info(
        f"{cfg.estimator.value} finished in {wall_time:.2f}s "
        f"({len(failures)} failed replications, mse={result.mse})"
    )
    return result
