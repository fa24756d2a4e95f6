"""Tests for the martingale/drift split of the consensus coordinate."""

import numpy as np
import pytest

from opinion_urn.dynamics import run_trajectory
from opinion_urn.errors import MissingStepRecords
from opinion_urn.spectral import decompose_consensus, eigenbasis


def test_identity_holds_pathwise(path5, split_start):
    spectrum = eigenbasis(path5)
    trajectory = run_trajectory(path5, *split_start, 1000, 4, record_steps=True)
    parts = decompose_consensus(trajectory, spectrum)
    assert parts.identity_defect() < 1e-10
    assert parts.times[-1] == 1000
    assert parts.m[0] == 0.0 and parts.s[0] == 0.0
    assert parts.a[0] == pytest.approx(spectrum.p[0] + spectrum.p[1])


def test_delta_norms_decay(path5, split_start):
    trajectory = run_trajectory(path5, *split_start, 400, 1, record_steps=True)
    parts = decompose_consensus(trajectory, eigenbasis(path5))
    assert parts.delta_norms.shape == (401,)
    assert parts.delta_norms[-1] < parts.delta_norms[10]


def test_without_delta_norms(gnp10):
    trajectory = run_trajectory(gnp10, np.zeros(10), np.ones(10) * 2, 50, 0, record_steps=True)
    parts = decompose_consensus(trajectory, eigenbasis(gnp10), with_delta_norms=False)
    assert parts.delta_norms.size == 0
    np.testing.assert_array_equal(parts.a, 0.0)


def test_martingale_has_mean_zero(path5, split_start):
    spectrum = eigenbasis(path5)
    terminal = []
    for seed in range(60):
        trajectory = run_trajectory(path5, *split_start, 200, seed, record_steps=True)
        terminal.append(decompose_consensus(trajectory, spectrum, with_delta_norms=False).m[-1])
    terminal = np.array(terminal)
    se = terminal.std(ddof=1) / np.sqrt(terminal.size)
    assert abs(terminal.mean()) <= 4 * se


def test_needs_step_records(path5, split_start):
    trajectory = run_trajectory(path5, *split_start, 5, 0)
    with pytest.raises(MissingStepRecords):
        decompose_consensus(trajectory, eigenbasis(path5))
