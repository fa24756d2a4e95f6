"""Tests for Hadamard products, the Jacobi eigensolver and operator norms."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from opinion_urn.errors import DimensionMismatch, DomainError, NonConvergence, NotSymmetric
from opinion_urn.linalg import (
    hadamard_left,
    hadamard_right,
    jacobi_eigs,
    operator_norm,
    row_norm_bounds,
)

finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
sizes = st.integers(min_value=1, max_value=7)


@st.composite
def matrices(draw, square=False):
    n = draw(sizes)
    m = n if square else draw(sizes)
    return draw(arrays(np.float64, (n, m), elements=finite))


@st.composite
def symmetric_matrices(draw):
    A = draw(matrices(square=True))
    return 0.5 * (A + A.T)


class TestHadamard:
    def test_left_scales_rows(self):
        A = np.arange(6.0).reshape(2, 3)
        np.testing.assert_array_equal(hadamard_left(np.array([2.0, -1.0]), A),
                                      [[0.0, 2.0, 4.0], [-3.0, -4.0, -5.0]])

    def test_right_scales_columns(self):
        A = np.ones((2, 3))
        np.testing.assert_array_equal(hadamard_right(A, np.array([1.0, 2.0, 3.0])),
                                      [[1.0, 2.0, 3.0], [1.0, 2.0, 3.0]])

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatch, match="rows"):
            hadamard_left(np.ones(3), np.ones((2, 2)))
        with pytest.raises(DimensionMismatch, match="columns"):
            hadamard_right(np.ones((2, 2)), np.ones(3))

    def test_non_finite_rejected(self):
        with pytest.raises(DomainError):
            hadamard_left(np.ones(2), np.array([[1.0, np.nan], [0.0, 1.0]]))

    @settings(max_examples=60, deadline=None)
    @given(A=matrices(), data=st.data())
    def test_submultiplicative(self, A, data):
        b = data.draw(arrays(np.float64, (A.shape[0],), elements=finite))
        bound = operator_norm(A) * np.linalg.norm(b)
        assert operator_norm(hadamard_left(b, A)) <= bound * (1 + 1e-7) + 1e-12

    @settings(max_examples=60, deadline=None)
    @given(A=matrices(), data=st.data())
    def test_left_right_associativity(self, A, data):
        b = data.draw(arrays(np.float64, (A.shape[0],), elements=finite))
        A1 = data.draw(arrays(np.float64, (data.draw(sizes), A.shape[0]), elements=finite))
        np.testing.assert_allclose(
            A1 @ hadamard_left(b, A), hadamard_right(A1, b) @ A, rtol=1e-12, atol=1e-9
        )


class TestJacobi:
    @settings(max_examples=60, deadline=None)
    @given(S=symmetric_matrices())
    def test_matches_lapack(self, S):
        result = jacobi_eigs(S)
        np.testing.assert_allclose(result.eigenvalues, np.linalg.eigvalsh(S), atol=1e-9)

    @settings(max_examples=60, deadline=None)
    @given(S=symmetric_matrices())
    def test_vectors_orthonormal_and_reconstruct(self, S):
        result = jacobi_eigs(S)
        n = S.shape[0]
        np.testing.assert_allclose(result.vectors.T @ result.vectors, np.eye(n), atol=1e-10)
        np.testing.assert_allclose(result.reconstruct(), S, atol=1e-9)

    def test_ascending_order(self):
        result = jacobi_eigs(np.diag([3.0, -1.0, 2.0]))
        np.testing.assert_array_equal(result.eigenvalues, [-1.0, 2.0, 3.0])

    def test_zero_matrix(self):
        result = jacobi_eigs(np.zeros((3, 3)))
        np.testing.assert_array_equal(result.eigenvalues, np.zeros(3))

    def test_not_symmetric(self):
        with pytest.raises(NotSymmetric):
            jacobi_eigs(np.array([[1.0, 2.0], [0.0, 1.0]]))

    def test_not_square(self):
        with pytest.raises(DimensionMismatch):
            jacobi_eigs(np.ones((2, 3)))

    def test_sweep_budget(self):
        S = np.array([[2.0, 1.0, 0.5], [1.0, 3.0, 0.2], [0.5, 0.2, 1.0]])
        with pytest.raises(NonConvergence):
            jacobi_eigs(S, max_sweeps=0)


class TestOperatorNorm:
    @settings(max_examples=80, deadline=None)
    @given(A=matrices())
    def test_matches_lapack(self, A):
        reference = np.linalg.norm(A, 2)
        assert operator_norm(A) == pytest.approx(reference, rel=1e-7, abs=1e-12)

    def test_zero(self):
        assert operator_norm(np.zeros((3, 2))) == 0.0

    def test_start_vector_in_null_space(self):
        A = np.array([[1.0, -1.0], [1.0, -1.0]])
        assert operator_norm(A) == pytest.approx(2.0, rel=1e-10)

    def test_repeated_singular_values(self):
        assert operator_norm(np.eye(4)) == pytest.approx(1.0, rel=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(A=matrices(square=True))
    def test_row_norm_sandwich(self, A):
        row, op = row_norm_bounds(A)
        n = A.shape[0]
        assert row <= op * (1 + 1e-7) + 1e-12
        assert op <= np.sqrt(n) * row * (1 + 1e-7) + 1e-12

    def test_row_norms_need_square(self):
        with pytest.raises(DimensionMismatch):
            row_norm_bounds(np.ones((2, 3)))


def test_jacobi_on_nearly_constant_matrix():
    S = np.full((5, 5), 4.0)
    S[0, 0] = 0.0
    S[1, 2] = S[2, 1] = 3.75
    result = jacobi_eigs(S)
    np.testing.assert_allclose(result.eigenvalues, np.linalg.eigvalsh(S), atol=1e-12)
    np.testing.assert_allclose(result.reconstruct(), S, atol=1e-12)


def test_jacobi_resolves_tiny_coupling():
    S = np.array([[1.0, 1e-7], [1e-7, 1.0 + 1e-6]])
    result = jacobi_eigs(S)
    np.testing.assert_allclose(result.eigenvalues, np.linalg.eigvalsh(S), rtol=0, atol=1e-15)
    assert abs(result.vectors[0, 0]) < 1.0 - 1e-6


def test_operator_norm_from_non_dominant_start():
    # The all-ones vector is an eigenvector of AᵀA for the smaller singular value 1
    A = np.array([[1.5, -0.5], [-0.5, 1.5]])
    assert operator_norm(A) == pytest.approx(2.0, rel=1e-10)
    row, op = row_norm_bounds(A)
    assert row == pytest.approx(np.sqrt(2.5))
    assert row <= op <= np.sqrt(2) * row


@pytest.mark.parametrize("value", [1e-100, 8.6e-85, 1e-300, 1e150])
def test_operator_norm_is_scale_free(value):
    assert operator_norm(np.array([[value]])) == pytest.approx(value, rel=1e-12)
    A = value * np.array([[3.0, 0.0], [0.0, -5.0]])
    assert operator_norm(A) == pytest.approx(5.0 * value, rel=1e-10)
