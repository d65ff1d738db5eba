import numpy as np
import pytest

from wordle_difficulty.errors import DataError, NumericalError
from wordle_difficulty.ologit import (OrdLogitModel, _gradient_hessian,
                                      _loglik, class_probabilities,
                                      linear_score, ologit_classify,
                                      ologit_fit)

from helpers import binary_logit_reference

TABLE_CUTPOINTS = np.array([-2.20, -0.32, 2.00])


def sample_proportional_odds(rng, beta, cutpoints, n):
    m = len(beta)
    F = rng.normal(size=(n, m))
    latent = F @ beta + rng.logistic(size=n)
    labels = 1 + np.searchsorted(cutpoints, latent, side="left")
    return F, labels


def reference_model(beta=(1.343, 0.823, 0.732, 0.687)):
    return OrdLogitModel(beta=np.asarray(beta, dtype=np.float64),
                         cutpoints=TABLE_CUTPOINTS.copy(), k=4)


class TestClassify:
    def test_published_threshold_semantics(self):
        model = reference_model()
        f = np.array([3.236 / 1.343, 0.0, 0.0, 0.0])
        level, y = ologit_classify(model, f)
        assert y == pytest.approx(3.236, abs=1e-12)
        assert level == 4

    def test_boundary_goes_to_lower_level(self):
        model = reference_model(beta=(1.0, 0, 0, 0))
        assert ologit_classify(model, np.array([-2.20, 0, 0, 0]))[0] == 1
        assert ologit_classify(model, np.array([0.0, 0, 0, 0]))[0] == 3
        assert ologit_classify(model, np.array([2.0, 0, 0, 0]))[0] == 3
        assert ologit_classify(model, np.array([2.0 + 1e-9, 0, 0, 0]))[0] == 4

    def test_level_is_nondecreasing_step_function(self):
        model = reference_model(beta=(1.0, 0, 0, 0))
        previous = 0
        for y in np.concatenate([np.linspace(-5, 5, 401),
                                 TABLE_CUTPOINTS - 1e-12,
                                 TABLE_CUTPOINTS,
                                 TABLE_CUTPOINTS + 1e-12]):
            level, _ = ologit_classify(model, np.array([y, 0, 0, 0]))
            assert 1 <= level <= 4
        for y in sorted(np.concatenate([np.linspace(-5, 5, 101), TABLE_CUTPOINTS])):
            level, _ = ologit_classify(model, np.array([y, 0, 0, 0]))
            assert level >= previous
            previous = level

    def test_linear_score(self):
        model = reference_model()
        f = np.array([1.0, -1.0, 0.5, 2.0])
        assert linear_score(model, f) == pytest.approx(float(model.beta @ f))


class TestGradients:
    def test_gradient_matches_finite_differences(self):
        rng = np.random.default_rng(0)
        F, labels = sample_proportional_odds(rng, np.array([0.8, -0.5]),
                                             np.array([-1.0, 0.7]), 400)
        beta = np.array([0.3, 0.1])
        cuts = np.array([-0.8, 0.9])
        _, grad, hess = _gradient_hessian(beta, cuts, F, labels, 3)
        eps = 1e-6
        packed = np.concatenate([beta, cuts])

        def ll(params):
            return _loglik(params[:2], params[2:], F, labels, 3)

        for j in range(4):
            up = packed.copy()
            up[j] += eps
            down = packed.copy()
            down[j] -= eps
            assert grad[j] == pytest.approx((ll(up) - ll(down)) / (2 * eps), abs=1e-4)

    def test_hessian_matches_finite_differences(self):
        rng = np.random.default_rng(1)
        F, labels = sample_proportional_odds(rng, np.array([0.8]), np.array([-0.5, 0.5]), 300)
        beta = np.array([0.2])
        cuts = np.array([-0.4, 0.6])
        _, grad0, hess = _gradient_hessian(beta, cuts, F, labels, 3)
        eps = 1e-6
        packed = np.concatenate([beta, cuts])
        for j in range(3):
            up = packed.copy()
            up[j] += eps
            down = packed.copy()
            down[j] -= eps
            _, gu, _ = _gradient_hessian(up[:1], up[1:], F, labels, 3)
            _, gd, _ = _gradient_hessian(down[:1], down[1:], F, labels, 3)
            assert np.allclose(hess[:, j], (gu - gd) / (2 * eps), atol=1e-3)


class TestFit:
    def test_synthetic_recovery(self):
        rng = np.random.default_rng(42)
        beta_true = np.array([1.2, -0.8, 0.5, 0.9])
        cuts_true = np.array([-1.5, 0.2, 1.8])
        F, labels = sample_proportional_odds(rng, beta_true, cuts_true, 5000)
        model = ologit_fit(F, labels)
        assert model.k == 4
        assert np.all(np.abs(model.beta - beta_true) / np.abs(beta_true) < 0.10)
        assert np.all(np.abs(model.cutpoints - cuts_true) < 0.1)
        assert np.all(np.diff(model.cutpoints) > 0)

    def test_two_level_case_matches_binary_logit(self):
        rng = np.random.default_rng(7)
        beta_true = np.array([0.9, -0.6])
        F, labels = sample_proportional_odds(rng, beta_true, np.array([0.3]), 800)
        model = ologit_fit(F, labels)
        # P(level 2) = logistic(beta.f - cut), i.e. binary logit with intercept -cut
        intercept, coef = binary_logit_reference(F, labels == 2)
        assert np.allclose(model.beta, coef, atol=1e-6)
        assert -model.cutpoints[0] == pytest.approx(intercept, abs=1e-6)

    def test_reported_criteria(self):
        rng = np.random.default_rng(3)
        F, labels = sample_proportional_odds(rng, np.array([1.0, 0.5]),
                                             np.array([-0.5, 0.8]), 600)
        model = ologit_fit(F, labels)
        params = 2 + 2
        assert model.aic == pytest.approx(2 * params - 2 * model.log_likelihood)
        assert model.bic == pytest.approx(params * np.log(600) - 2 * model.log_likelihood)
        assert model.n_iter <= 100

    def test_missing_level_rejected(self):
        F = np.zeros((10, 1))
        labels = np.array([1, 1, 1, 1, 1, 3, 3, 3, 3, 3])
        with pytest.raises(DataError):
            ologit_fit(F, labels)

    def test_separation_detected(self):
        # perfectly separated data drives beta off to infinity
        F = np.concatenate([np.full(50, -1.0), np.full(50, 1.0)])[:, None]
        labels = np.concatenate([np.full(50, 1, dtype=int), np.full(50, 2, dtype=int)])
        with pytest.raises(NumericalError):
            ologit_fit(F, labels, max_iter=200)

    def test_probabilities_sum_to_one(self):
        rng = np.random.default_rng(8)
        F, labels = sample_proportional_odds(rng, np.array([1.0]), np.array([-1.0, 1.0]), 300)
        model = ologit_fit(F, labels)
        probs = class_probabilities(model, F)
        assert probs.shape == (300, 3)
        assert np.allclose(probs.sum(axis=1), 1.0, atol=1e-12)
        assert np.all(probs >= 0)
