import logging

import numpy as np
import pytest
from scipy import stats

from lendpool.analysis import StatsParams, estimate_mean, estimate_means
from lendpool.analysis.estimator import RunningMoments
from lendpool.core.errors import ConfigInvalid


def normal_sampler(offset: int, loc: float = 0.0):
    def sample(i: int) -> float:
        return loc + np.random.Generator(np.random.PCG64(offset + i)).standard_normal()
    return sample


def test_constant_sampler_stops_at_n_min():
    estimate = estimate_mean(lambda i: 3.0)

    assert estimate.mean == 3.0
    assert estimate.half_width == 0.0
    assert estimate.n == 30
    assert estimate.converged
    assert estimate.interval == (3.0, 3.0)


def test_selector_picks_observable():
    estimate = estimate_mean(lambda i: np.array([1.0, 7.0]), selector=lambda s: s[1])
    assert estimate.mean == 7.0


def test_vector_samples_share_one_stream():
    calls = []

    def sampler(i):
        calls.append(i)
        return np.array([[1.0, i % 2], [2.0, 0.0]])

    ensemble = estimate_means(sampler, StatsParams(delta=10.0))

    assert ensemble.mean.shape == (2, 2)
    assert calls == list(range(30))
    assert ensemble.at((0, 1)).mean == pytest.approx(0.5)
    assert ensemble.all_converged


def test_standard_normal_needs_about_1537_samples():
    estimate = estimate_mean(normal_sampler(0), delta=0.1)

    assert estimate.converged
    assert 2 * estimate.half_width <= 0.1
    assert 1400 <= estimate.n <= 1700
    assert estimate.n % 30 == 0


def test_budget_exhausted_is_reported(caplog):
    with caplog.at_level(logging.WARNING):
        estimate = estimate_mean(normal_sampler(0), delta=1e-3, n_max=90)

    assert estimate.n == 90
    assert not estimate.converged
    assert "did not reach" in caplog.text


def test_last_block_is_truncated_at_n_max():
    estimate = estimate_mean(normal_sampler(0), delta=1e-3, n_min=30, n_max=50, block=30)
    assert estimate.n == 50


def test_running_moments_match_numpy():
    data = np.random.Generator(np.random.PCG64(3)).normal(size=(95, 3))
    moments = RunningMoments()
    for start in range(0, 95, 30):
        moments.push_block(data[start:start + 30])

    assert moments.n == 95
    np.testing.assert_allclose(moments.mean, data.mean(axis=0))
    np.testing.assert_allclose(moments.variance(), data.var(axis=0, ddof=1))
    np.testing.assert_allclose(
        moments.half_width(0.05),
        stats.t.ppf(0.975, 94) * data.std(axis=0, ddof=1) / np.sqrt(95),
    )


@pytest.mark.parametrize("kwargs", [
    {"alpha": 0.0},
    {"alpha": 1.0},
    {"delta": 0.0},
    {"n_min": 1},
    {"n_min": 100, "n_max": 50},
    {"block": 0},
])
def test_invalid_stats_params(kwargs):
    with pytest.raises(ConfigInvalid):
        StatsParams(**kwargs)


@pytest.mark.slow
def test_interval_coverage():
    covered = 0
    runs = 1000
    for run in range(runs):
        estimate = estimate_mean(normal_sampler(run * 10_000, loc=5.0), delta=0.5)
        low, high = estimate.interval
        covered += low <= 5.0 <= high

    assert 0.92 <= covered / runs <= 0.98
