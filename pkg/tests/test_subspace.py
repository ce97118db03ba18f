import logging

import numpy as np
import pytest

from gas.errors import (
    ConfigurationError,
    DegenerateFunctionError,
    DenominatorTooSmall,
    DomainError,
    EstimationError,
    NumericalError,
    UnsupportedOperationError,
)
from gas.models import CallableModel, QuadraticNoiseModel, quadratic_gradient_oracle
from gas.models.quadratic import random_orthogonal
from gas.sampling import InputDistribution, RngStream, sample_matrix, sobol_points
from gas.subspace import (
    as_gradient_matrix,
    assemble_bhat,
    clamp_spectrum,
    conditional_surrogate_eval,
    conditional_surrogate_values,
    decompose,
    decompose_symmetric,
    draw_companion_design,
    estimate_gamma,
    finite_diff_vector,
    first_eigenvector_cosine,
    gas_subspace,
    normalize_signs,
    select_d1,
    sobol_indices_from_bhat,
    sufficient_summary,
    upper_sobol_indices,
)
from gas.subspace.gamma import chord_bounds, directional_steps
from gas.types import GammaEstimates, GasConfig, SubspaceDecomposition


def linear_model(a, normal=True):
    a = np.asarray(a, dtype=float)
    kind = InputDistribution.standard_normal if normal else InputDistribution.unit_uniform
    return CallableModel(lambda Z: Z @ a, kind(a.size), name="linear")


def orthonormal_with_first(a):
    """Orthonormal basis whose first column is ``a / |a|``."""
    M = np.column_stack([a, np.eye(a.size)[:, 1:]])
    Q, _ = np.linalg.qr(M)
    return Q * np.sign(Q[:, 0] @ a)


@pytest.fixture
def a():
    return RngStream(42).standard_normal(10)


def test_normalize_signs():
    U = np.array([[0.6, -0.8], [-0.8, -0.6]])
    fixed = normalize_signs(U)
    np.testing.assert_array_equal(fixed, [[-0.6, 0.8], [0.8, 0.6]])


def test_clamp_spectrum(caplog):
    with caplog.at_level(logging.WARNING):
        clamped = clamp_spectrum([2.0, 1.0, -1e-12])
    np.testing.assert_array_equal(clamped, [2.0, 1.0, 0.0])
    assert "Clamped" in caplog.text
    with pytest.raises(NumericalError):
        clamp_spectrum([1.0, -1e-6])


def test_finite_diff_vector_is_exact_for_linear_models(a):
    f = linear_model(a)
    z, v = np.zeros(10), np.linspace(0.1, 1.0, 10)
    sample = finite_diff_vector(f, z, v)
    np.testing.assert_allclose(sample.dvec, a, rtol=1e-12)
    with pytest.raises(DenominatorTooSmall):
        finite_diff_vector(f, z, np.r_[0.0, v[1:]])


def test_companions_continue_the_sobol_sequence():
    dist = InputDistribution.unit_uniform(3)
    cfg = GasConfig(M1=8, M2=4, companion_sequence="continue")
    Z, V = draw_companion_design(dist, cfg, RngStream(0))
    assert Z.shape == (8, 3) and V.shape == (8, 4, 3)
    offsets = np.mod(V - Z[:, np.newaxis, :], 1.0)
    np.testing.assert_allclose(offsets.reshape(32, 3), sobol_points(3, 32), atol=1e-12)


def test_companions_restart_the_sobol_sequence_by_default():
    dist = InputDistribution.unit_uniform(3)
    cfg = GasConfig(M1=8, M2=4)
    assert cfg.companion_sequence == "restart"
    Z, V = draw_companion_design(dist, cfg, RngStream(0))
    offsets = np.mod(V - Z[:, np.newaxis, :], 1.0)
    for row in offsets:
        np.testing.assert_allclose(row, sobol_points(3, 4), atol=1e-12)


def test_companion_redraws_give_up():
    dist = InputDistribution.standard_normal(2)
    cfg = GasConfig(M1=4, M2=2, denom_floor=10.0, max_redraws=3)
    with pytest.raises(EstimationError):
        draw_companion_design(dist, cfg, RngStream(0))


def test_linear_model_has_one_exact_direction(a):
    f = linear_model(a)
    decomp = gas_subspace(f, GasConfig(M1=200, M2=2), RngStream(1))
    assert decomp.lambdas[0] == pytest.approx(a @ a, rel=1e-10)
    assert np.all(decomp.lambdas[1:] <= 1e-10)
    assert first_eigenvector_cosine(decomp.U[:, 0], a) >= 1 - 1e-10
    np.testing.assert_allclose(decomp.U.T @ decomp.U, np.eye(10), atol=1e-10)
    assert decomp.fingerprint == f.fingerprint()

    gammas = estimate_gamma(f, f.distribution, decomp.U, 200, 4, RngStream(2))
    expected = (decomp.U.T @ a) ** 2
    assert gammas.gammas[0] == pytest.approx(expected[0], rel=1e-8)
    np.testing.assert_allclose(gammas.gammas[1:], expected[1:], atol=1e-10)


def test_bhat_shape_and_seed_reproducibility(a):
    f = linear_model(a[:4])
    cfg = GasConfig(M1=30, M2=3, seed=5)
    bhat = assemble_bhat(f, f.distribution, cfg)
    assert bhat.shape == (4, 90)
    np.testing.assert_array_equal(bhat, assemble_bhat(f, f.distribution, cfg))


def test_squared_coordinate_second_moment():
    f = CallableModel(lambda Z: Z[:, 0] ** 2, InputDistribution.standard_normal(3))
    bhat = assemble_bhat(f, f.distribution, GasConfig(M1=10_000, M2=1), RngStream(3))
    C = bhat @ bhat.T
    assert C[0, 0] == pytest.approx(2.0, rel=0.05)
    assert C[1, 1] == pytest.approx(0.0, abs=1e-12)


def test_decompose_pads_short_matrices():
    bhat = np.array([[1.0], [2.0], [2.0]])
    decomp = decompose(bhat)
    assert decomp.dimension == 3
    np.testing.assert_allclose(decomp.lambdas, [9.0, 0.0, 0.0], atol=1e-12)
    with pytest.raises(DomainError):
        decompose(np.array([[np.nan, 1.0]]))


def test_decompose_matches_the_gram_matrix_spectrum():
    model = QuadraticNoiseModel.generate(5, seed=2)
    bhat = assemble_bhat(model, model.distribution, GasConfig(M1=300, M2=3), RngStream(8))
    decomp = decompose(bhat)
    expected = np.sort(np.linalg.eigvalsh(bhat @ bhat.T))[::-1]
    np.testing.assert_allclose(decomp.lambdas, expected, atol=1e-8)


def test_decompose_symmetric_orders_spectrum():
    decomp = decompose_symmetric(np.diag([1.0, 3.0, 2.0]))
    np.testing.assert_allclose(decomp.lambdas, [3.0, 2.0, 1.0])
    np.testing.assert_allclose(np.abs(decomp.U[:, 0]), [0.0, 1.0, 0.0])


@pytest.mark.parametrize(
    "values,expected",
    [
        ([0.9, 0.05, 0.05], 1),
        ([0.45, 0.45, 0.05, 0.05], 2),
        ([0.5, 0.5], 1),
        ([0.4, 0.4, 0.2], 2),
    ],
)
def test_select_d1(values, expected):
    assert select_d1(values) == expected
    for scale in (1e-6, 3.0, 1e4):
        assert select_d1(scale * np.asarray(values)) == expected


def test_select_d1_needs_two_values():
    with pytest.raises(DomainError):
        select_d1([1.0])


def test_as_matrix_for_a_linear_model(a):
    f = linear_model(a)
    C, decomp = as_gradient_matrix(f, f.distribution, 500, 1e-4, RngStream(0))
    np.testing.assert_allclose(C, np.outer(a, a), rtol=1e-6, atol=1e-8)
    assert decomp.lambdas[0] == pytest.approx(a @ a, rel=1e-6)


def test_as_matrix_matches_the_gradient_oracle():
    model = QuadraticNoiseModel.generate(10, seed=0)
    dist = model.distribution
    C, _ = as_gradient_matrix(model, dist, 10_000, 1e-3, RngStream(7))
    G = quadratic_gradient_oracle(model, sample_matrix(dist, 10_000, RngStream(7).child(0)))
    np.testing.assert_allclose(C, G.T @ G / 10_000, atol=1e-3)


def test_as_matrix_stays_in_the_unit_cube():
    seen = []

    def quadratic(Z):
        seen.append(Z.copy())
        return (Z**2).sum(axis=1)

    f = CallableModel(quadratic, InputDistribution.unit_uniform(4))
    C, _ = as_gradient_matrix(f, f.distribution, 300, 0.1, RngStream(0))
    points = np.vstack(seen)
    assert np.all((points > 0.0) & (points < 1.0))
    np.testing.assert_allclose(C, C.T)


def test_uniform_directional_steps_stay_on_the_chord():
    dist = InputDistribution.unit_uniform(5)
    Z = sample_matrix(dist, 200, RngStream(0))
    u = orthonormal_with_first(np.arange(1.0, 6.0))[:, 0]
    T = directional_steps(dist, Z, u, sobol_points(1, 9)[1:, 0])
    moved = Z[:, np.newaxis, :] + T[:, :, np.newaxis] * u
    assert np.all((moved > 0.0) & (moved < 1.0))
    t_lo, t_hi = chord_bounds(Z, u)
    assert np.all(t_lo < 0) and np.all(t_hi > 0)


def test_gamma_rejects_non_orthonormal_directions(a):
    f = linear_model(a[:3])
    with pytest.raises(DomainError):
        estimate_gamma(f, f.distribution, np.ones((3, 3)), 10, 2, RngStream(0))


def test_gamma_sum_does_not_depend_on_the_basis():
    a = np.array([1.0, -2.0, 0.5, 1.5])
    model = CallableModel(
        lambda Z, rng: Z @ a + 0.5 * rng.standard_normal(Z.shape[0]),
        InputDistribution.standard_normal(4),
        name="noisy-linear",
        stochastic=True,
    )
    Q = random_orthogonal(4, RngStream(11))
    identity = estimate_gamma(model, model.distribution, np.eye(4), 16_000, 1, RngStream(0))
    rotated = estimate_gamma(model, model.distribution, Q, 16_000, 1, RngStream(1))

    error = np.sqrt(np.sum(identity.standard_errors**2) + np.sum(rotated.standard_errors**2))
    assert abs(identity.gammas.sum() - rotated.gammas.sum()) <= 3 * error


def test_gamma_records_the_stream_seed(a):
    f = linear_model(a[:3])
    gammas = estimate_gamma(f, f.distribution, np.eye(3), 20, 2, RngStream(9))
    assert gammas.seed == 9
    assert estimate_gamma(f, f.distribution, np.eye(3), 20, 2, seed=4).seed == 4


def test_gamma_on_the_unit_cube():
    model = QuadraticNoiseModel.generate(4, seed=0)
    gammas = estimate_gamma(model, model.distribution, np.eye(4), 500, 4, RngStream(0))
    assert isinstance(gammas, GammaEstimates)
    assert np.all(gammas.gammas > 0)
    assert gammas.normalized().sum() == pytest.approx(1.0)


class TestConditionalSurrogate:
    def setup_method(self):
        self.a = np.array([3.0, -1.0, 2.0, 0.5])
        self.f = linear_model(self.a)
        U = orthonormal_with_first(self.a)
        self.decomp = SubspaceDecomposition(U, np.array([1.0, 0.0, 0.0, 0.0]), d1=1)

    def test_linear_model_is_exact_along_its_direction(self):
        W1 = np.linspace(-2.0, 2.0, 9)
        values = conditional_surrogate_values(self.f, self.decomp, W1, 5, RngStream(0))
        np.testing.assert_allclose(values, W1 * np.linalg.norm(self.a), atol=1e-10)
        single = conditional_surrogate_eval(self.f, self.decomp, [1.0], 3, RngStream(0))
        assert single == pytest.approx(np.linalg.norm(self.a))

    def test_full_dimension_evaluates_directly(self):
        decomp = self.decomp.with_d1(4)
        W1 = RngStream(1).standard_normal((6, 4))
        values = conditional_surrogate_values(self.f, decomp, W1, 1, RngStream(0))
        np.testing.assert_allclose(values, (W1 @ decomp.U.T) @ self.a)

    def test_requires_normal_inputs_and_d1(self):
        uniform = linear_model(self.a, normal=False)
        with pytest.raises(UnsupportedOperationError):
            conditional_surrogate_values(uniform, self.decomp, [0.5], 1, RngStream(0))
        unset = SubspaceDecomposition(self.decomp.U, self.decomp.lambdas)
        with pytest.raises(DomainError):
            conditional_surrogate_values(self.f, unset, [0.5], 1, RngStream(0))
        with pytest.raises(DomainError):
            conditional_surrogate_values(self.f, self.decomp, [0.5], 0, RngStream(0))


def test_upper_sobol_indices():
    f = CallableModel(
        lambda Z: Z[:, 0] + Z[:, 1] ** 2, InputDistribution.standard_normal(3), name="sum"
    )
    estimate = upper_sobol_indices(f, f.distribution, 50_000, RngStream(0))
    np.testing.assert_allclose(estimate.indices, [1 / 3, 2 / 3, 0.0], atol=0.05)
    assert estimate.variance == pytest.approx(3.0, rel=0.1)
    assert estimate.indices[2] == 0.0


def test_constant_function_is_degenerate():
    f = CallableModel(lambda Z: np.full(Z.shape[0], 2.0), InputDistribution.standard_normal(2))
    with pytest.raises(DegenerateFunctionError):
        upper_sobol_indices(f, f.distribution, 100, RngStream(0))


def test_sobol_indices_from_bhat():
    bhat = np.array([[1.0, 1.0], [0.0, 2.0]])
    np.testing.assert_allclose(sobol_indices_from_bhat(bhat, 2.0), [0.5, 1.0])


def test_sufficient_summary():
    model = QuadraticNoiseModel.generate(4, seed=0)
    decomp = SubspaceDecomposition(np.eye(4), np.ones(4))
    summary = sufficient_summary(model, decomp, k=2, n=2000, rng=RngStream(0))
    assert summary.columns == ["w1", "w2", "f"]
    assert summary.values.shape == (2000, 3)
    assert len(summary) == 2000
    with pytest.raises(DomainError):
        sufficient_summary(model, decomp, k=3, rng=RngStream(0))


def test_seed_replaces_a_missing_stream():
    model = QuadraticNoiseModel.generate(4, seed=0)
    decomp = SubspaceDecomposition(np.eye(4), np.ones(4))
    by_seed = sufficient_summary(model, decomp, n=50, seed=3)
    by_stream = sufficient_summary(model, decomp, n=50, rng=RngStream(3))
    np.testing.assert_array_equal(by_seed.values, by_stream.values)
    with pytest.raises(ConfigurationError):
        sufficient_summary(model, decomp, n=50)

    f = linear_model([1.0, 2.0])
    normal = SubspaceDecomposition(np.eye(2), np.ones(2), d1=1)
    values = conditional_surrogate_values(f, normal, [0.3, -0.2], 4, seed=5)
    np.testing.assert_array_equal(
        values, conditional_surrogate_values(f, normal, [0.3, -0.2], 4, RngStream(5))
    )


def test_decomposition_accessors_and_round_trip():
    decomp = SubspaceDecomposition(np.eye(3), [3.0, 1.0, 0.0], d1=1, M1=10, M2=2, seed=4)
    np.testing.assert_allclose(decomp.normalized(), [0.75, 0.25, 0.0])
    assert decomp.U1.shape == (3, 1) and decomp.U2.shape == (3, 2)
    np.testing.assert_allclose(decomp.active_coordinates([1.0, 2.0, 3.0]), [1.0])
    rebuilt = SubspaceDecomposition.from_dict(decomp.to_dict())
    np.testing.assert_array_equal(rebuilt.U, decomp.U)
    assert rebuilt.d1 == 1 and rebuilt.M2 == 2
    with pytest.raises(DomainError):
        decomp.with_d1(4)
    with pytest.raises(DomainError):
        SubspaceDecomposition(np.eye(3), [1.0, 0.0, 0.0]).U1
