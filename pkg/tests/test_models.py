import logging
from dataclasses import replace

import numpy as np
import pytest

from gas.errors import ConfigurationError, DomainError, EvaluationError
from gas.models import (
    LIBERIA_RANGES,
    MODELS,
    CallableModel,
    EbolaModel,
    EbolaParams,
    HestonConfig,
    HestonModel,
    QuadraticNoiseModel,
    RidgeModel,
    asian_heston_eval,
    default_spectrum,
    describe_model,
    ebola_from_unit_cube,
    ebola_r0,
    model_from_config,
    quadratic_eval,
    quadratic_gradient_oracle,
    ridge_eval,
)
from gas.sampling import InputDistribution, RngStream, sample_matrix


def test_callable_model_evaluates_rows():
    model = CallableModel(lambda Z: Z.sum(axis=1), InputDistribution.standard_normal(3))
    np.testing.assert_allclose(model.evaluate(np.ones((4, 3))), np.full(4, 3.0))
    assert model(np.array([1.0, 2.0, 3.0])) == 6.0


def test_stochastic_model_needs_a_stream():
    model = CallableModel(
        lambda Z, rng: rng.standard_normal(Z.shape[0]),
        InputDistribution.standard_normal(2),
        stochastic=True,
    )
    with pytest.raises(EvaluationError):
        model.evaluate(np.zeros((2, 2)))
    assert model.evaluate(np.zeros((2, 2)), RngStream(0)).shape == (2,)


def test_model_output_is_checked():
    dist = InputDistribution.standard_normal(2)
    short = CallableModel(lambda Z: np.zeros(1), dist)
    with pytest.raises(EvaluationError):
        short.evaluate(np.zeros((3, 2)))
    broken = CallableModel(lambda Z: np.full(Z.shape[0], np.nan), dist)
    with pytest.raises(EvaluationError):
        broken.evaluate(np.zeros((3, 2)))


def test_fingerprint_tracks_configuration():
    a = QuadraticNoiseModel.generate(4, seed=1)
    b = QuadraticNoiseModel.generate(4, seed=1)
    c = QuadraticNoiseModel.generate(4, seed=2)
    assert a.fingerprint() == b.fingerprint()
    assert a.fingerprint() != c.fingerprint()
    assert len(a.fingerprint()) == 64


class TestQuadraticModel:
    def setup_method(self):
        self.model = QuadraticNoiseModel.generate(6, seed=3)

    def test_matrix_has_requested_spectrum(self):
        np.testing.assert_allclose(self.model.A, self.model.A.T)
        np.testing.assert_allclose(
            np.sort(np.linalg.eigvalsh(self.model.A))[::-1], default_spectrum(6), atol=1e-12
        )

    def test_values_and_gradient(self):
        z = np.linspace(0.1, 0.6, 6)
        assert quadratic_eval(self.model, z) == pytest.approx(0.5 * z @ self.model.A @ z)
        np.testing.assert_allclose(quadratic_gradient_oracle(self.model, z), self.model.A @ z)

    def test_noise_is_drawn_from_the_stream(self):
        noisy = self.model.with_noise(0.5)
        assert noisy.stochastic and not self.model.stochastic
        Z = sample_matrix(noisy.distribution, 500, RngStream(1))
        a = noisy.evaluate(Z, RngStream(2))
        b = noisy.evaluate(Z, RngStream(2))
        np.testing.assert_array_equal(a, b)
        assert np.std(a - noisy.noiseless(Z)) == pytest.approx(0.5, rel=0.15)

    def test_config_round_trip(self):
        rebuilt = model_from_config(self.model.to_config())
        np.testing.assert_allclose(rebuilt.A, self.model.A)
        assert rebuilt.fingerprint() == self.model.fingerprint()

    def test_rejects_indefinite_matrix(self):
        with pytest.raises(ConfigurationError):
            QuadraticNoiseModel.from_matrix([[1.0, 0.0], [0.0, -1.0]])
        with pytest.raises(ConfigurationError):
            QuadraticNoiseModel.generate(3, noise_sigma=-1.0)


class TestHestonModel:
    def setup_method(self):
        self.config = HestonConfig(n_vol_paths=4, substeps=5, chunk_size=128)
        self.model = HestonModel(self.config)

    def test_feller_violation(self, caplog):
        with caplog.at_level(logging.WARNING):
            cfg = HestonConfig(kappa=1.0, theta=0.01, sigma_v=0.5)
        assert not cfg.satisfies_feller
        assert "Feller" in caplog.text
        with pytest.raises(ConfigurationError):
            HestonConfig(kappa=1.0, theta=0.01, sigma_v=0.5, strict_feller=True)

    @pytest.mark.parametrize("field,value", [("rho", 1.5), ("T", 0.0), ("d", 0), ("S0", -1.0)])
    def test_invalid_config(self, field, value):
        with pytest.raises(ConfigurationError):
            HestonConfig(**{field: value})

    def test_simulate_shape_and_positivity(self):
        Z = sample_matrix(self.model.distribution, 300, RngStream(0))
        prices = self.model.simulate(Z, RngStream(1))
        assert prices.shape == (300, 4, 10)
        assert np.all(prices > 0)

    def test_discounted_asset_is_a_martingale(self):
        model = HestonModel(HestonConfig(n_vol_paths=10, substeps=10))
        Z = sample_matrix(model.distribution, 2000, RngStream(5))
        prices = model.simulate(Z, RngStream(6))
        discounted = np.exp(-model.config.r * model.config.T) * prices[:, :, -1]
        assert discounted.mean() == pytest.approx(model.config.S0, abs=1.5)

    def test_payoff_is_reproducible_and_non_negative(self):
        Z = sample_matrix(self.model.distribution, 50, RngStream(0))
        a = self.model.evaluate(Z, RngStream(9))
        np.testing.assert_array_equal(a, self.model.evaluate(Z, RngStream(9)))
        assert np.all(a >= 0)
        assert isinstance(asian_heston_eval(self.config, Z[0], RngStream(9)), float)

    def test_constant_volatility_matches_black_scholes_paths(self):
        cfg = HestonConfig(sigma_v=0.0, V0=0.04, theta=0.04, rho=0.5, n_vol_paths=3, substeps=4)
        Z = sample_matrix(InputDistribution.standard_normal(cfg.d), 20, RngStream(2))
        values = HestonModel(cfg).evaluate(Z, RngStream(3))

        times = cfg.dt * np.arange(1, cfg.d + 1)
        log_paths = (cfg.r - 0.5 * cfg.V0) * times + np.sqrt(cfg.V0 * cfg.dt) * np.cumsum(Z, axis=1)
        paths = cfg.S0 * np.exp(log_paths)
        expected = np.exp(-cfg.r * cfg.T) * np.maximum(paths.mean(axis=1) - cfg.K, 0.0)
        np.testing.assert_allclose(values, expected, rtol=1e-10, atol=1e-10)

    def test_zero_strike_pays_the_discounted_average(self):
        model = HestonModel(HestonConfig(K=0.0, rho=0.0, n_vol_paths=4, substeps=5))
        Z = sample_matrix(model.distribution, 100, RngStream(0))
        values = model.evaluate(Z, RngStream(1))
        average = model.simulate(Z, RngStream(1)).mean(axis=(1, 2))
        assert np.all(values > 0)
        np.testing.assert_allclose(values, np.exp(-model.config.r * model.config.T) * average)

    def test_payoff_is_bounded_by_the_discounted_average(self):
        Z = sample_matrix(self.model.distribution, 200, RngStream(4))
        values = self.model.evaluate(Z, RngStream(5))
        average = self.model.simulate(Z, RngStream(5)).mean(axis=(1, 2))
        discount = np.exp(-self.config.r * self.config.T)
        assert np.all(values <= discount * average + 1e-12)

    def test_antithetic_paths(self):
        model = HestonModel(HestonConfig(n_vol_paths=4, substeps=3, antithetic=True))
        xi = model._inner_normals(RngStream(0), 2, 3)
        assert xi.shape == (2, 4, 3)
        np.testing.assert_array_equal(xi[:, :2], -xi[:, 2:])

    def test_stochastic_and_config(self):
        assert self.model.stochastic
        params = self.model.parameters()
        assert "chunk_size" not in params
        assert model_from_config({"model": "heston", **params}).config.rho == self.config.rho


class TestRidgeModel:
    def test_indicator_values(self):
        model = RidgeModel([1.0, -1.0])
        assert ridge_eval(model, np.array([2.0, 1.0])) == 1.0
        assert ridge_eval(model, np.array([1.0, 2.0])) == 0.0

    def test_generated_direction(self):
        model = RidgeModel.generate(10, seed=4)
        assert np.linalg.norm(model.direction) == pytest.approx(1.0)
        assert model_from_config(model.to_config()).fingerprint() == model.fingerprint()

    def test_zero_direction(self):
        with pytest.raises(ConfigurationError):
            RidgeModel(np.zeros(3))

    def test_positive_scaling_of_theta(self):
        theta = RngStream(1).standard_normal(6)
        Z = sample_matrix(InputDistribution.standard_normal(6), 500, RngStream(2))
        np.testing.assert_array_equal(
            RidgeModel(theta).evaluate(Z), RidgeModel(2.0 * theta).evaluate(Z)
        )

    def test_mean_is_one_half(self):
        model = RidgeModel.generate(8, seed=3)
        Z = sample_matrix(model.distribution, 100_000, RngStream(4))
        assert model.evaluate(Z).mean() == pytest.approx(0.5, abs=0.01)


class TestEbolaModel:
    def setup_method(self):
        self.model = EbolaModel()

    def test_center_of_the_cube(self):
        p = self.model.params_at(np.full(8, 0.5))
        midpoints = {name: 0.5 * (low + high) for name, (low, high) in LIBERIA_RANGES.items()}
        assert p.beta1 == pytest.approx(midpoints["beta1"])
        assert p.psi == pytest.approx(midpoints["psi"])
        assert ebola_from_unit_cube(np.full(8, 0.5)) == pytest.approx(ebola_r0(p))

    def test_r0_formula(self):
        p = EbolaParams(0.2, 0.3, 0.1, 0.5, 0.1, 0.2, 0.4, 0.3)
        expected = (0.2 + 0.3 * 0.5 * 0.1 / 0.4 + 0.1 * 0.3 / 0.2) / (0.1 + 0.3)
        assert ebola_r0(p) == pytest.approx(expected)

    def test_worked_example(self):
        p = EbolaParams(0.25, 0.25, 0.125, 0.7, 0.1, 0.15, 0.375, 0.4)
        assert ebola_r0(p) == pytest.approx(1.26)

    @pytest.mark.parametrize("beta", ["beta1", "beta2", "beta3"])
    def test_r0_increases_with_transmission(self, beta):
        points = sample_matrix(self.model.distribution, 200, RngStream(6))
        for z in points:
            p = self.model.params_at(z)
            raised = replace(p, **{beta: getattr(p, beta) + 0.05})
            assert ebola_r0(raised) > ebola_r0(p)

    def test_zero_transmission_is_allowed(self):
        assert ebola_r0(EbolaParams(0.0, 0.0, 0.0, 0.5, 0.1, 0.2, 0.4, 0.3)) == 0.0

    @pytest.mark.parametrize("index", [0, 4, 7])
    def test_invalid_parameters(self, index):
        values = [0.2, 0.3, 0.1, 0.5, 0.1, 0.2, 0.4, 0.3]
        values[index] = -0.1 if index == 0 else 0.0
        with pytest.raises(DomainError):
            EbolaParams(*values)

    def test_outside_the_cube(self):
        with pytest.raises(DomainError):
            self.model.evaluate(np.ones((1, 8)))

    def test_range_table(self):
        table = self.model.range_table()
        assert len(table) == 8
        assert table[0] == ("beta1", 0.1, 0.4)


def test_catalog():
    assert set(MODELS.names()) == {"quadratic", "heston", "ridge", "ebola"}
    assert isinstance(model_from_config({"model": "Ridge", "dimension": 4}), RidgeModel)
    with pytest.raises(ConfigurationError):
        model_from_config({"model": "black-scholes"})
    with pytest.raises(ConfigurationError):
        model_from_config({"dimension": 3})
    with pytest.raises(ConfigurationError):
        model_from_config({"model": "heston", "volatility": 0.2})


def test_describe_model():
    info = describe_model("ebola")
    assert info["dimension"] == 8
    assert info["input"]["kind"] == "unit_uniform"
    assert [row["parameter"] for row in info["ranges"]] == list(LIBERIA_RANGES)
    assert "ranges" not in describe_model("quadratic", {"dimension": 3})
