"""Tests for the ensemble runner, sample grids and power-law fits."""

import numpy as np
import pytest
from pydantic import ValidationError

from opinion_urn.dynamics import simulate_batch, trajectory_rng
from opinion_urn.ensemble import (
    conjectured_exponent,
    default_sample_times,
    fit_power_law,
    fit_power_law_series,
    run_ensemble,
)
from opinion_urn.errors import DomainError, InsufficientData, NonpositiveValues
from opinion_urn.models import EnsembleConfig
from opinion_urn.spectral import eigenbasis

PATH5_EXPONENT = -0.371334
PATH5_AMPLITUDE = 2.02


def make_config(graph, u0, g0, **overrides):
    values = dict(graph=graph, u0=list(u0), g0=list(g0), n_steps=500, n_trajectories=12,
                  base_seed=7)
    values.update(overrides)
    return EnsembleConfig(**values)


class TestSampleTimes:
    def test_contains_checkpoints(self):
        times = default_sample_times(10_000)
        assert times[0] == 0 and times[-1] == 10_000
        for t in (1, 10, 100, 1000, 1250, 2500, 5000):
            assert t in times
        assert times == sorted(set(times))

    def test_density(self):
        times = default_sample_times(10_000)
        decade = [t for t in times if 100 <= t < 1000]
        assert 18 <= len(decade) <= 21

    def test_degenerate(self):
        assert default_sample_times(0) == [0]
        assert default_sample_times(1) == [0, 1]


class TestEnsembleConfig:
    def test_shapes_checked(self, path5):
        with pytest.raises(ValidationError):
            make_config(path5, [0, 0], [1, 1])

    def test_sample_times_checked(self, path5, split_start):
        with pytest.raises(ValidationError):
            make_config(path5, *split_start, sample_times=[0, 600])
        with pytest.raises(ValidationError):
            make_config(path5, *split_start, sample_times=[5, 5])

    def test_needs_a_trajectory(self, path5, split_start):
        with pytest.raises(ValidationError):
            make_config(path5, *split_start, n_trajectories=0)


class TestRunEnsemble:
    def test_deterministic(self, path5, split_start):
        config = make_config(path5, *split_start)
        a = run_ensemble(config)
        b = run_ensemble(config)
        np.testing.assert_array_equal(a.mean_z_sq, b.mean_z_sq)
        np.testing.assert_array_equal(a.var_a, b.var_a)

    def test_independent_of_batching_and_workers(self, path5, split_start):
        a = run_ensemble(make_config(path5, *split_start, batch_size=5, workers=3))
        b = run_ensemble(make_config(path5, *split_start, batch_size=100, workers=1))
        np.testing.assert_array_equal(a.mean_z_sq, b.mean_z_sq)
        np.testing.assert_array_equal(a.mean_a, b.mean_a)
        np.testing.assert_array_equal(a.a_paths, b.a_paths)

    def test_single_trajectory(self, path5, split_start):
        spectrum = eigenbasis(path5)
        config = make_config(path5, *split_start, n_trajectories=1, sample_times=[0, 100, 500])
        stats = run_ensemble(config, spectrum)

        direct = simulate_batch(
            path5, *split_start, 500, [trajectory_rng(7, 0)], sample_times=[0, 100, 500]
        )
        x = direct.x[0]
        a = x @ spectrum.p
        np.testing.assert_allclose(stats.mean_z_sq, np.sum((x - a[:, None]) ** 2, axis=1))
        np.testing.assert_array_equal(stats.var_a, 0.0)
        assert stats.n_trajectories == 1

    def test_two_vertex_consensus_stays_put(self, k2):
        config = make_config(k2, [1.5, 1.5], [3.0, 3.0], n_steps=300)
        stats = run_ensemble(config)
        np.testing.assert_array_equal(stats.mean_z_sq, 0.0)

    def test_stats_are_read_only(self, path5, split_start):
        stats = run_ensemble(make_config(path5, *split_start, n_trajectories=2))
        with pytest.raises(ValueError):
            stats.mean_z_sq[0] = 1.0

    def test_martingale_increments_centred(self, path5, split_start):
        times = [0, 1, 10, 37, 75, 150, 300]
        stats = run_ensemble(make_config(path5, *split_start, n_trajectories=200, n_steps=300,
                                         sample_times=times))
        mean = np.abs(stats.mean_m_increment[1:])
        np.testing.assert_array_less(mean, 3 * stats.se_m_increment[1:] + 1e-15)

    def test_index_at_or_before(self, path5, split_start):
        stats = run_ensemble(make_config(path5, *split_start, n_trajectories=1,
                                         sample_times=[0, 10, 20]))
        assert stats.index_at_or_before(15) == 1
        assert stats.index_at_or_before(20) == 2


class TestPowerLawFit:
    def test_recovers_synthetic_law(self):
        t = np.array(default_sample_times(10_000), dtype=float)
        y = PATH5_AMPLITUDE * np.where(t > 0, t, 1.0) ** PATH5_EXPONENT
        fit = fit_power_law_series(t, y)
        assert fit.exponent == pytest.approx(PATH5_EXPONENT, abs=1e-6)
        assert fit.amplitude == pytest.approx(PATH5_AMPLITUDE, abs=1e-4)
        assert fit.r_squared == pytest.approx(1.0)
        assert fit.window == (100, 10_000)

    def test_constant_series(self):
        t = np.arange(1, 50, dtype=float)
        fit = fit_power_law_series(t, np.full(t.shape, 0.3), (1, 100))
        assert fit.exponent == pytest.approx(0.0, abs=1e-12)
        assert fit.r_squared == 1.0

    def test_inverse_law(self):
        t = np.geomspace(100, 10_000, 30)
        fit = fit_power_law_series(t, 5.0 / t, (100, 10_000))
        assert fit.exponent == pytest.approx(-1.0, abs=1e-9)
        assert fit.predict(1000.0) == pytest.approx(0.005)

    def test_needs_five_points(self):
        with pytest.raises(InsufficientData):
            fit_power_law_series([100, 200, 300, 400], [1, 1, 1, 1])

    def test_rejects_nonpositive(self):
        t = np.geomspace(100, 1000, 8)
        y = 1.0 / t
        y[3] = 0.0
        with pytest.raises(NonpositiveValues):
            fit_power_law_series(t, y)

    def test_conjectured_exponent(self):
        assert conjectured_exponent(0.185667) == pytest.approx(PATH5_EXPONENT)
        assert conjectured_exponent(0.75) == -1.0
        assert conjectured_exponent(0.5) == -1.0
        with pytest.raises(DomainError):
            conjectured_exponent(0.0)


@pytest.mark.slow
def test_disagreement_decay_on_five_vertex_path(path5, split_start):
    """1000 trajectories of 10^4 steps from x0 = (1, 1, 0, 0, 0), g0 = 1."""
    config = make_config(path5, *split_start, n_steps=10_000, n_trajectories=1000, base_seed=0)
    stats = run_ensemble(config)
    fit = fit_power_law(stats, (100, 10_000))

    assert fit.exponent == pytest.approx(PATH5_EXPONENT, abs=0.1)
    index = stats.index_at_or_before(1000)
    reference = PATH5_AMPLITUDE * 1000.0 ** PATH5_EXPONENT
    assert 0.5 * reference <= stats.mean_z_sq[index] <= 2.0 * reference
    late = stats.sample_times >= 100
    rank = np.corrcoef(np.argsort(np.argsort(stats.sample_times[late])),
                       np.argsort(np.argsort(stats.mean_z_sq[late])))[0, 1]
    assert rank <= -0.95


def test_rows_follow_trajectory_streams(path5, split_start):
    spectrum = eigenbasis(path5)
    config = make_config(path5, *split_start, n_trajectories=3, sample_times=[0, 500])
    stats = run_ensemble(config, spectrum)
    for i in range(3):
        batch = simulate_batch(path5, *split_start, 500, [trajectory_rng(7, i)])
        expected = float(batch.x[0, -1] @ spectrum.p)
        assert stats.a_paths[i, -1] == pytest.approx(expected, rel=1e-14)
