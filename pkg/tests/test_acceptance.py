"""End-to-end checks against published results and closed-form identities.

The heavier runs carry the ``slow`` marker; skip them with ``pytest -m "not slow"``.
"""

import numpy as np
import pytest

from gas.bench import ExperimentConfig, heatmap_sweep, noise_study, ridge_study
from gas.models import CallableModel, EbolaModel, HestonConfig, HestonModel, QuadraticNoiseModel
from gas.models.quadratic import default_spectrum
from gas.sampling import InputDistribution, RngStream
from gas.subspace import (
    as_gradient_matrix,
    assemble_bhat,
    conditional_surrogate_values,
    estimate_gamma,
    gas_subspace,
    select_d1,
    sobol_indices_from_bhat,
    upper_sobol_indices,
)
from gas.types import GasConfig

LIBERIA_AS_SPECTRUM = [0.769, 0.198, 0.018, 0.010, 0.004, 0.0, 0.0, 0.0]
LIBERIA_GAS_SPECTRUM = [0.797, 0.132, 0.040, 0.019, 0.008, 0.003, 0.001, 0.0]
LIBERIA_AS_VECTOR = [0.385, 0.062, 0.340, 0.043, -0.252, -0.298, -0.038, -0.759]
LIBERIA_GAS_VECTOR = [0.464, 0.077, 0.490, 0.055, -0.251, -0.389, -0.046, -0.565]


def aligned(u, target):
    u = np.asarray(u)
    return u if u @ np.asarray(target) >= 0 else -u


@pytest.mark.slow
def test_liberia_spectra():
    model = EbolaModel()
    gas_spectra, gas_vectors, as_spectra, as_vectors = [], [], [], []
    for seed in range(5):
        master = RngStream(seed)
        cfg = GasConfig(M1=1000, M2=10, seed=seed)
        gas = gas_subspace(model, cfg, master.child(1))
        _, as_ = as_gradient_matrix(model, model.distribution, 10_000, 1e-3, master.child(0))
        gas_spectra.append(gas.normalized())
        gas_vectors.append(aligned(gas.U[:, 0], LIBERIA_GAS_VECTOR))
        as_spectra.append(as_.normalized())
        as_vectors.append(aligned(as_.U[:, 0], LIBERIA_AS_VECTOR))

    np.testing.assert_allclose(np.mean(gas_spectra, axis=0), LIBERIA_GAS_SPECTRUM, atol=0.05)
    np.testing.assert_allclose(np.mean(as_spectra, axis=0), LIBERIA_AS_SPECTRUM, atol=0.05)
    np.testing.assert_allclose(np.mean(gas_vectors, axis=0), LIBERIA_GAS_VECTOR, atol=0.1)
    np.testing.assert_allclose(np.mean(as_vectors, axis=0), LIBERIA_AS_VECTOR, atol=0.1)


@pytest.mark.slow
def test_asian_option_gamma_concentrates_in_one_direction():
    model = HestonModel(HestonConfig(n_vol_paths=10))
    master = RngStream(2024)
    decomp = gas_subspace(model, GasConfig(M1=2000, M2=10, seed=2024), master.child(0))
    gammas = estimate_gamma(model, model.distribution, decomp.U, 2000, 10, master.child(1))
    normalized = gammas.normalized()
    assert normalized[0] >= 0.95
    assert select_d1(normalized) == 1


@pytest.mark.slow
def test_gas_beats_as_on_a_reduced_heatmap():
    base = ExperimentConfig(
        model={"model": "heston", "V0": 0.025, "kappa": 3.0, "theta": 0.025},
        estimator="GAS_PCE",
        master_seed=11,
        N=2000,
        K=10,
        p=3,
        M1=1000,
        M2=10,
        h=0.1,
        d1=1,
    )
    grid = heatmap_sweep(base, sigma_values=[0.05, 0.15], rho_values=[-0.9, 0.0, 0.9])
    assert np.count_nonzero(grid.mse_ratio < 1.0) >= 5


def tilted_quadratic(dimension, cosine):
    """Quadratic whose leading eigenvector makes a fixed angle with the all-ones direction.

    The rest of the all-ones direction lies along the smallest eigenvalue.
    """
    ones = np.ones(dimension) / np.sqrt(dimension)
    f = np.zeros(dimension)
    f[:2] = [1 / np.sqrt(2), -1 / np.sqrt(2)]
    sine = np.sqrt(1 - cosine**2)
    lead = cosine * ones + sine * f
    tail = sine * ones - cosine * f
    fill = RngStream(0).standard_normal((dimension, dimension - 2))
    basis, _ = np.linalg.qr(np.column_stack([lead, tail, fill]))
    Q = np.column_stack([basis[:, 0], basis[:, 2:], basis[:, 1]])
    spectrum = default_spectrum(dimension)
    return QuadraticNoiseModel(Q @ np.diag(spectrum) @ Q.T, Q=Q, spectrum=spectrum)


@pytest.mark.slow
def test_gas_is_more_robust_to_noise():
    model = tilted_quadratic(10, cosine=0.6)
    wins = 0
    for seed in range(10):
        study = noise_study(
            model,
            seed,
            sigma_values=(1.0,),
            splits=((10_000, 1),),
        )
        as_best = max(r["cosine"] for r in study["rows"] if r["method"] == "AS")
        gas = next(r["cosine"] for r in study["rows"] if r["method"] == "GAS")
        wins += gas > as_best
    assert wins >= 8


@pytest.mark.slow
def test_ridge_direction_is_recovered():
    rows = ridge_study(dimensions=(10, 20), seed=0)
    assert len(rows) == 6
    for row in rows:
        assert row["cosine"] >= 0.95, (row["dimension"], row["M1"], row["M2"])


@pytest.mark.slow
def test_conditional_surrogate_variance_falls_with_inner_samples():
    A = QuadraticNoiseModel.generate(6, seed=1).A
    model = CallableModel(
        lambda Z: 0.5 * np.einsum("ni,ij,nj->n", Z, A, Z),
        InputDistribution.standard_normal(6),
        name="gaussian-quadratic",
    )
    decomp = gas_subspace(model, GasConfig(M1=500, M2=2, seed=0), RngStream(0)).with_d1(1)
    w1 = np.full((40_000, 1), 0.7)

    scaled = []
    for N1 in (1, 4, 16):
        values = conditional_surrogate_values(model, decomp, w1, N1, RngStream(N1))
        scaled.append(values.var(ddof=1) * N1)
    np.testing.assert_allclose(scaled[1:], scaled[0], rtol=0.1)


def test_undivided_differences_give_upper_sobol_indices():
    model = CallableModel(
        lambda Z: Z[:, 0] + Z[:, 1] ** 2, InputDistribution.standard_normal(2), name="sum"
    )
    direct = upper_sobol_indices(model, model.distribution, 100_000, RngStream(5))
    bhat = assemble_bhat(
        model, model.distribution, GasConfig(M1=100_000, M2=1, seed=5), RngStream(6), divided=False
    )
    from_bhat = sobol_indices_from_bhat(bhat, direct.variance)
    assert np.all(np.abs(from_bhat - direct.indices) <= 3 * np.sqrt(2) * direct.standard_errors)
