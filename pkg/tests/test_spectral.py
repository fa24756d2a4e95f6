"""Tests for the influence matrix, its spectrum, Δ_j and the Gautschi bounds."""

import numpy as np
import pytest
from pydantic import ValidationError

from opinion_urn.dynamics import apply_step, diffusion_matrix, init_state, make_rng
from opinion_urn.errors import DimensionMismatch, DomainError
from opinion_urn.graphs import complete_graph, erdos_renyi, star_graph
from opinion_urn.linalg import hadamard_left, jacobi_eigs
from opinion_urn.spectral import (
    a_k_matrix,
    consensus_coordinate,
    delta_matrix,
    disagreement,
    eigenbasis,
    expected_damped_diffusion,
    gautschi_bounds,
    influence_matrix,
    spectral_gap,
    symmetrize,
)
from opinion_urn.verify import SUITE_SEED

# (13 - √73) / 24
PATH5_GAP = (13.0 - np.sqrt(73.0)) / 24.0


class TestInfluenceMatrix:
    def test_path_entries(self, path5):
        L = influence_matrix(path5)
        assert L[0, 1] == pytest.approx(2.0 / 3.0)
        assert L[1, 0] == pytest.approx(1.0 / 6.0)
        assert L[1, 2] == pytest.approx(0.25)
        assert L[0, 2] == 0.0
        np.testing.assert_allclose(L.sum(axis=1), 0.0, atol=1e-15)

    def test_symmetrisation(self, gnp10):
        d = gnp10.degree_vector()
        S = symmetrize(influence_matrix(gnp10), d)
        np.testing.assert_allclose(S, S.T, atol=1e-15)
        i, j = gnp10.edges[0]
        assert S[i, j] == pytest.approx(1.0 / (d[i] + d[j]))

    def test_symmetrise_checks_shapes(self, path5):
        with pytest.raises(DimensionMismatch):
            symmetrize(influence_matrix(path5), np.ones(4))
        with pytest.raises(DomainError):
            symmetrize(influence_matrix(path5), np.array([1.0, 2.0, 0.0, 2.0, 1.0]))


class TestEigenbasis:
    def test_path_gap(self, path5):
        spectrum = eigenbasis(path5)
        assert spectrum.gap == pytest.approx(PATH5_GAP, abs=1e-9)
        assert spectral_gap(spectrum) == spectrum.gap
        assert spectrum.gap == pytest.approx(0.185667, abs=1e-6)

    def test_complete_graph_gaps(self):
        assert eigenbasis(complete_graph(3)).gap == pytest.approx(0.75, abs=1e-12)
        assert eigenbasis(complete_graph(2)).gap == 0.5

    @pytest.mark.parametrize("graph", [star_graph(6), erdos_renyi(15, 0.4, 2), complete_graph(5)])
    def test_decomposition(self, graph):
        spectrum = eigenbasis(graph)
        n = graph.n_vertices
        np.testing.assert_allclose(spectrum.P @ spectrum.D @ spectrum.P_inv, spectrum.L, atol=1e-12)
        np.testing.assert_allclose(spectrum.P @ spectrum.P_inv, np.eye(n), atol=1e-12)
        np.testing.assert_array_equal(spectrum.P[:, 0], np.ones(n))
        assert spectrum.eigenvalues[0] == 0.0
        assert np.all(spectrum.eigenvalues[1:] < 0)
        assert np.all(np.diff(spectrum.eigenvalues[1:]) <= 0)

    def test_consensus_vector(self, gnp10):
        spectrum = eigenbasis(gnp10)
        d = gnp10.degree_vector()
        np.testing.assert_allclose(spectrum.p, d**2 / np.sum(d**2), atol=1e-12)
        np.testing.assert_allclose(spectrum.p @ spectrum.L, 0.0, atol=1e-10)
        assert spectrum.p.sum() == pytest.approx(1.0)

    def test_spectrum_is_frozen(self, path5):
        spectrum = eigenbasis(path5)
        with pytest.raises(ValidationError):
            spectrum.gap = 0.5
        with pytest.raises(ValueError):
            spectrum.L[0, 0] = 1.0

    def test_dense_random_graphs(self):
        rng = make_rng(SUITE_SEED + 3)
        for instance in range(20):
            n = int(rng.integers(2, 31))
            graph = erdos_renyi(n, float(rng.uniform(0.3, 0.8)), SUITE_SEED + instance)
            spectrum = eigenbasis(graph)
            np.testing.assert_allclose(
                spectrum.P @ spectrum.D @ spectrum.P_inv, spectrum.L, atol=1e-9
            )
            S = symmetrize(spectrum.L, graph.degree_vector())
            np.testing.assert_allclose(
                jacobi_eigs(S).eigenvalues, np.linalg.eigvalsh(S), atol=1e-9
            )

    def test_a_k_is_row_stochastic(self, gnp10):
        L = influence_matrix(gnp10)
        for k in (1, 2, 10, 50):
            A = a_k_matrix(L, k)
            assert np.all(A >= 0)
            np.testing.assert_allclose(A.sum(axis=1), 1.0, atol=1e-14)

    def test_a_k_needs_positive_k(self, path5):
        with pytest.raises(DomainError):
            a_k_matrix(influence_matrix(path5), 0)


class TestDampedDiffusion:
    def test_expectation_over_edges(self, path5, mixed_start):
        state = init_state(path5, *mixed_start)
        average = np.zeros((5, 5))
        for edge in range(path5.n_edges):
            post, _ = apply_step(state, edge, 0)
            average += hadamard_left(post.gamma, diffusion_matrix(state, edge))
        average /= path5.n_edges
        np.testing.assert_allclose(expected_damped_diffusion(state), average, atol=1e-15)

    def test_delta_shrinks_for_balanced_weights(self, path5):
        L = influence_matrix(path5)
        d = path5.degree_vector()
        # Weights proportional to degree, as along a typical trajectory
        for j in (100, 1000, 10000):
            g = 2.0 * j * d / d.sum() + 1.0
            state = init_state(path5, np.zeros(5), g)
            norm = np.linalg.norm(delta_matrix(state, j, influence=L), 2)
            assert norm < 2.0 / j

    def test_delta_defaults(self, path5):
        state = init_state(path5, np.zeros(5), np.ones(5))
        np.testing.assert_array_equal(
            delta_matrix(state), expected_damped_diffusion(state) - influence_matrix(path5)
        )
        with pytest.raises(DomainError):
            delta_matrix(state, -1)

    def test_consensus_coordinate(self, path5):
        p = eigenbasis(path5).p
        x = np.array([1.0, 1.0, 0.0, 0.0, 0.0])
        a = consensus_coordinate(p, x)
        assert a == pytest.approx(p[0] + p[1])
        assert p @ disagreement(x, a) == pytest.approx(0.0, abs=1e-15)
        with pytest.raises(DimensionMismatch):
            consensus_coordinate(p, np.ones(4))


class TestGautschi:
    def test_example(self):
        bounds = gautschi_bounds(2, 5, 0.5)
        assert bounds.product == pytest.approx(0.4921875, abs=1e-15)
        assert bounds.lower == pytest.approx((1 / 6) ** 0.5)
        assert bounds.upper == pytest.approx((2 / 5) ** 0.5)
        assert bounds.lower <= bounds.product <= bounds.upper

    @pytest.mark.parametrize("lam", [0.1, 0.185667, 0.5, 0.9])
    def test_sandwich(self, lam):
        for j in range(1, 30):
            for t in range(j, 120, 7):
                lower, product, upper = gautschi_bounds(j, t, lam)
                assert lower - 1e-12 <= product <= upper + 1e-12

    @pytest.mark.parametrize("args", [(0, 5, 0.5), (5, 4, 0.5), (1, 5, 0.0), (1, 5, 1.0)])
    def test_domain(self, args):
        with pytest.raises(DomainError):
            gautschi_bounds(*args)
