import numpy as np
import pytest

from wordle_difficulty.distribution import GuessDistribution
from wordle_difficulty.qp import (correction_weights, feasible_target_interval,
                                  qp_correct)

from helpers import qp_bruteforce, qp_bruteforce_mp


def random_distribution(rng):
    raw = rng.dirichlet(np.full(7, rng.uniform(0.2, 3.0))) * 100.0
    return GuessDistribution.from_percent(raw)


def assert_constraints(d_raw, solution, atol=1e-9):
    delta = solution.delta
    assert abs(delta.sum()) < atol
    assert abs(np.arange(1, 8) @ delta - solution.applied_target) < atol
    assert np.all(delta >= -np.asarray(d_raw.bins) - atol)


def test_zero_target_returns_zero():
    d = GuessDistribution.from_percent([5, 10, 20, 30, 20, 10, 5])
    solution = qp_correct(d, 0.0)
    assert np.allclose(solution.delta, 0, atol=1e-12)
    assert solution.objective == pytest.approx(0.0, abs=1e-18)
    assert not solution.clamped


def test_uniform_closed_form():
    d = GuessDistribution.from_percent(np.full(7, 100.0 / 7.0))
    solution = qp_correct(d, 28.0)
    assert np.allclose(solution.delta, [-3, -2, -1, 0, 1, 2, 3], atol=1e-9)
    assert solution.active_set == ()
    assert_constraints(d, solution)


def test_weights_floor():
    w = correction_weights(np.array([0.0, 50.0, 100.0, 0, 0, 0, 0]))
    assert w[0] == 1.0
    assert w[1] == pytest.approx(np.exp(-50.0))
    assert w[2] == 1e-12


def test_feasible_interval_matches_expectation_bounds():
    d = GuessDistribution.from_percent([0, 1, 11, 33, 39, 14, 2])
    lo, hi = feasible_target_interval(d)
    assert lo == pytest.approx(100 * (1 - 4.60), abs=1e-9)
    assert hi == pytest.approx(100 * (7 - 4.60), abs=1e-9)


def test_clamped_low_target_lands_on_vertex():
    d = GuessDistribution.from_percent([10, 20, 30, 20, 10, 5, 5])
    lo, _ = feasible_target_interval(d)
    solution = qp_correct(d, lo - 50.0)
    assert solution.clamped
    assert solution.applied_target == pytest.approx(lo)
    corrected = np.asarray(d.bins) + solution.delta
    assert corrected[0] == pytest.approx(100.0)
    assert np.allclose(corrected[1:], 0.0, atol=1e-9)


def test_clamped_high_target_lands_on_vertex():
    d = GuessDistribution.from_percent([10, 20, 30, 20, 10, 5, 5])
    _, hi = feasible_target_interval(d)
    solution = qp_correct(d, hi + 1.0)
    assert solution.clamped
    corrected = np.asarray(d.bins) + solution.delta
    assert corrected[6] == pytest.approx(100.0)


def test_matches_bruteforce_oracle_on_random_instances():
    rng = np.random.default_rng(2024)
    for _ in range(250):
        d = random_distribution(rng)
        lo, hi = feasible_target_interval(d)
        target = rng.uniform(lo, hi)
        solution = qp_correct(d, target)
        assert_constraints(d, solution)
        weights = correction_weights(np.asarray(d.bins))
        ref_delta, ref_obj = qp_bruteforce(d.bins, target, weights)
        assert solution.objective <= ref_obj + 1e-8
        assert np.allclose(solution.delta, ref_delta, atol=1e-8)


def test_integer_mean_targets():
    # targets that make the started mass land exactly on a bin boundary
    d = GuessDistribution.from_percent([2, 8, 20, 40, 20, 8, 2])
    e = d.expectation
    for mean_bin in (2, 3, 4, 5, 6):
        target = 100.0 * (mean_bin - e)
        solution = qp_correct(d, target)
        assert_constraints(d, solution)
        weights = correction_weights(np.asarray(d.bins))
        _, ref_obj = qp_bruteforce(d.bins, target, weights)
        assert solution.objective <= ref_obj + 1e-8


def test_expectation_shift_identity():
    rng = np.random.default_rng(17)
    for _ in range(100):
        d = random_distribution(rng)
        lo, hi = feasible_target_interval(d)
        target = rng.uniform(lo, hi)
        solution = qp_correct(d, target)
        corrected = GuessDistribution(np.asarray(d.bins) + solution.delta)
        assert corrected.expectation - d.expectation == pytest.approx(target / 100.0, abs=1e-9)


def test_high_precision_cross_validation():
    # 50-digit enumeration validates both the solver and the float64 oracle
    rng = np.random.default_rng(99)
    for _ in range(12):
        d = random_distribution(rng)
        lo, hi = feasible_target_interval(d)
        target = rng.uniform(lo, hi)
        weights = correction_weights(np.asarray(d.bins))
        solution = qp_correct(d, target)
        ref_delta, ref_obj = qp_bruteforce(d.bins, target, weights)
        mp_delta, mp_obj = qp_bruteforce_mp(d.bins, target, weights)
        assert solution.objective == pytest.approx(mp_obj, abs=1e-9)
        assert ref_obj == pytest.approx(mp_obj, abs=1e-9)
        assert np.allclose(solution.delta, mp_delta, atol=1e-8)
        assert np.allclose(ref_delta, mp_delta, atol=1e-8)


def test_active_set_reporting():
    d = GuessDistribution.from_percent([0.0, 10, 30, 30, 20, 10, 0.0])
    lo, _ = feasible_target_interval(d)
    solution = qp_correct(d, lo + 1.0)  # deep shift pins several bins
    for i in solution.active_set:
        assert solution.delta[i - 1] == pytest.approx(-d.bins[i - 1], abs=1e-9)
