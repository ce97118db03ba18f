import logging

import numpy as np

from ..models import EbolaModel, HestonConfig, HestonModel, RidgeModel
from ..sampling import RngStream
from ..subspace import (
    as_gradient_matrix,
    estimate_gamma,
    first_eigenvector_cosine,
    gas_subspace,
    select_d1,
)
from ..types import GasConfig
from .estimators import reference_value, run_estimator
from .experiment import EstimatorKind, HeatmapGrid, validate_budget

logger = logging.getLogger(__name__)

HEATMAP_SIGMAS = (0.01, 0.05, 0.1, 0.15, 0.2)
HEATMAP_RHOS = (-0.99, -0.9, -0.5, 0.0, 0.5, 0.9, 0.99)
HEATMAP_HESTON = {"V0": 0.025, "kappa": 3.0, "theta": 0.025}

NOISE_SIGMAS = (0.01, 0.1, 1.0)
NOISE_INCREMENTS = (1e-1, 1e-3, 1e-5)
NOISE_SPLITS = ((10_000, 1), (1_000, 10), (100, 100))

RIDGE_SPLITS = ((10_000, 1), (1_000, 10), (100, 100))


def _leading_vectors(decomp, count=2):
    count = min(count, decomp.dimension)
    return [decomp.U[:, i].tolist() for i in range(count)]


def heatmap_sweep(
    base_cfg,
    sigma_values=HEATMAP_SIGMAS,
    rho_values=HEATMAP_RHOS,
    reference_n=1_000_000,
    workers=1,
):
    """GAS_PCE over AS_PCE MSE and efficiency ratios on a (sigma_v, rho) grid.

    ``base_cfg`` is a GAS_PCE configuration on the Heston model; the AS run in
    each cell uses the same settings with ``M = M1 * M2`` gradient samples.
    Cells that fail are logged and left as NaN.
    """
    gas_base = base_cfg.with_estimator(EstimatorKind.GAS_PCE)
    as_base = base_cfg.with_estimator(EstimatorKind.AS_PCE, M=base_cfg.M1 * base_cfg.M2)
    validate_budget(gas_base, as_base)

    shape = (len(sigma_values), len(rho_values))
    mse_ratio, eff_ratio = np.full(shape, np.nan), np.full(shape, np.nan)
    gas_mse, as_mse = np.full(shape, np.nan), np.full(shape, np.nan)
    master = RngStream(base_cfg.master_seed)

    for i, sigma in enumerate(sigma_values):
        for j, rho in enumerate(rho_values):
            cell = {"sigma_v": float(sigma), "rho": float(rho)}
            logger.info(f"Heatmap cell sigma_v={sigma}, rho={rho}")
            try:
                gas_cfg = gas_base.with_model(**cell)
                as_cfg = as_base.with_model(**cell)
                model = HestonModel.from_config(
                    {k: v for k, v in gas_cfg.model.items() if k != "model"}
                )
                truth, truth_error = reference_value(
                    model, reference_n, master.child(2).child(i).child(j)
                )
                gas = run_estimator(gas_cfg, model, truth, truth_error, workers)
                as_ = run_estimator(as_cfg, model, truth, truth_error, workers)
                gas_mse[i, j], as_mse[i, j] = gas.mse, as_.mse
                mse_ratio[i, j] = gas.mse / as_.mse
                eff_ratio[i, j] = gas.efficiency / as_.efficiency
            except Exception as e:
                logger.warning(f"Heatmap cell sigma_v={sigma}, rho={rho} failed: {str(e)}")

    return HeatmapGrid(list(sigma_values), list(rho_values), mse_ratio, eff_ratio, gas_mse, as_mse)


def noise_study(
    model,
    seed,
    sigma_values=NOISE_SIGMAS,
    h_values=NOISE_INCREMENTS,
    splits=NOISE_SPLITS,
    as_samples=10_000,
    gamma_M1=10_000,
    gamma_M2=10,
    reference_samples=100_000,
    reference_h=1e-6,
    reference_M2=10,
    companion_sequence="restart",
):
    """Spectra and leading eigenvectors of AS and GAS under growing output noise.

    Every configuration is compared with noiseless references through the
    cosine between first eigenvectors.

    Returns:
        dict: ``{"reference": {...}, "rows": [...]}``
    """
    noiseless = model.with_noise(0.0)
    dist = noiseless.distribution
    master = RngStream(seed)

    _, as_ref = as_gradient_matrix(noiseless, dist, reference_samples, reference_h, master.child(0))
    ref_cfg = GasConfig(
        M1=reference_samples, M2=reference_M2, seed=seed, companion_sequence=companion_sequence
    )
    gas_ref = gas_subspace(noiseless, ref_cfg, master.child(1))
    gas_ref_gamma = estimate_gamma(
        noiseless, dist, gas_ref.U, reference_samples, reference_M2, master.child(2)
    )
    reference = {
        "AS": {"spectrum": as_ref.normalized().tolist(), "eigenvectors": _leading_vectors(as_ref)},
        "GAS": {
            "spectrum": gas_ref_gamma.normalized().tolist(),
            "eigenvectors": _leading_vectors(gas_ref),
        },
    }

    rows = []
    for s, sigma in enumerate(sigma_values):
        noisy = noiseless.with_noise(sigma)
        for k, h in enumerate(h_values):
            stream = master.child(3).child(s).child(k)
            _, decomp = as_gradient_matrix(noisy, dist, as_samples, h, stream)
            rows.append(
                {
                    "method": "AS",
                    "sigma": float(sigma),
                    "h": float(h),
                    "M1": None,
                    "M2": None,
                    "spectrum": decomp.normalized().tolist(),
                    "eigenvectors": _leading_vectors(decomp),
                    "cosine": first_eigenvector_cosine(decomp.U[:, 0], as_ref.U[:, 0]),
                }
            )
        for k, (M1, M2) in enumerate(splits):
            cfg = GasConfig(M1=M1, M2=M2, seed=seed, companion_sequence=companion_sequence)
            stream = master.child(4).child(s).child(k)
            decomp = gas_subspace(noisy, cfg, stream.child(0))
            gammas = estimate_gamma(noisy, dist, decomp.U, gamma_M1, gamma_M2, stream.child(1))
            rows.append(
                {
                    "method": "GAS",
                    "sigma": float(sigma),
                    "h": None,
                    "M1": int(M1),
                    "M2": int(M2),
                    "spectrum": gammas.normalized().tolist(),
                    "eigenvectors": _leading_vectors(decomp),
                    "cosine": first_eigenvector_cosine(decomp.U[:, 0], gas_ref.U[:, 0]),
                }
            )
    return {"reference": reference, "rows": rows}


def ebola_study(
    seeds, as_samples=10_000, h=1e-3, M1=1_000, M2=10, companion_sequence="restart"
):
    """Normalized spectra and first eigenvectors of AS and GAS on the Ebola model, per seed."""
    model = EbolaModel()
    rows = []
    for seed in seeds:
        master = RngStream(seed)
        _, as_decomp = as_gradient_matrix(model, model.distribution, as_samples, h, master.child(0))
        cfg = GasConfig(M1=M1, M2=M2, seed=seed, companion_sequence=companion_sequence)
        gas_decomp = gas_subspace(model, cfg, master.child(1))
        for method, decomp in (("AS", as_decomp), ("GAS", gas_decomp)):
            rows.append(
                {
                    "seed": int(seed),
                    "method": method,
                    "spectrum": decomp.normalized().tolist(),
                    "eigenvector": decomp.U[:, 0].tolist(),
                    "d1": select_d1(decomp.normalized()),
                }
            )
    return rows


def ridge_study(dimensions=(10, 20), splits=RIDGE_SPLITS, seed=0, companion_sequence="restart"):
    """Cosine between the first GAS eigenvector and the ridge direction per budget split."""
    rows = []
    master = RngStream(seed)
    for a, dimension in enumerate(dimensions):
        model = RidgeModel.generate(dimension, seed=seed)
        for b, (M1, M2) in enumerate(splits):
            cfg = GasConfig(M1=M1, M2=M2, seed=seed, companion_sequence=companion_sequence)
            decomp = gas_subspace(model, cfg, master.child(a).child(b))
            rows.append(
                {
                    "dimension": int(dimension),
                    "M1": int(M1),
                    "M2": int(M2),
                    "cosine": first_eigenvector_cosine(decomp.U[:, 0], model.direction),
                    "eigenvector": decomp.U[:, 0].tolist(),
                    "theta": model.direction.tolist(),
                }
            )
    return rows


def heston_spectrum_study(
    config=None,
    seed=0,
    as_samples=10_000,
    h=0.1,
    M1=10_000,
    M2=10,
    companion_sequence="restart",
):
    """AS eigenvalues against GAS eigenvalues and Gamma estimates for the Asian option."""
    model = HestonModel(config or HestonConfig())
    master = RngStream(seed)
    _, as_decomp = as_gradient_matrix(model, model.distribution, as_samples, h, master.child(0))
    cfg = GasConfig(M1=M1, M2=M2, seed=seed, companion_sequence=companion_sequence)
    gas_decomp = gas_subspace(model, cfg, master.child(1))
    gammas = estimate_gamma(model, model.distribution, gas_decomp.U, M1, M2, master.child(2))
    return {
        "AS": {
            "spectrum": as_decomp.normalized().tolist(),
            "eigenvector": as_decomp.U[:, 0].tolist(),
            "d1": select_d1(as_decomp.normalized()),
        },
        "GAS": {
            "spectrum": gas_decomp.normalized().tolist(),
            "gamma": gammas.normalized().tolist(),
            "eigenvector": gas_decomp.U[:, 0].tolist(),
            "d1": select_d1(gammas.normalized()),
        },
    }
