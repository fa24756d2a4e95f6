"""Left and right Hadamard products and dense-matrix validation."""

import numpy as np

from ..errors import DimensionMismatch, DomainError


def as_matrix(values: np.ndarray, name: str = "matrix") -> np.ndarray:
    """Return ``values`` as a finite 2-D float64 array.

    Raises:
        DimensionMismatch: If the input is not two-dimensional.
        DomainError: If any entry is NaN or infinite.
    """
    matrix = np.asarray(values, dtype=np.float64)
    if matrix.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise DomainError(f"{name} has non-finite entries")
    return matrix


def as_vector(values: np.ndarray, name: str = "vector") -> np.ndarray:
    """Return ``values`` as a 1-D float64 array."""
    vector = np.asarray(values, dtype=np.float64)
    if vector.ndim != 1:
        raise DimensionMismatch(f"{name} must be 1-D, got shape {vector.shape}")
    return vector


def hadamard_left(b: np.ndarray, A: np.ndarray) -> np.ndarray:
    """Left-Hadamard product: (b ∘ A)^{ij} = b^i A^{ij}.

    Scales row i of ``A`` by ``b[i]``.

    Raises:
        DimensionMismatch: If ``len(b)`` differs from the row count of ``A``.
    """
    b = as_vector(b, "b")
    A = as_matrix(A, "A")
    if b.shape[0] != A.shape[0]:
        raise DimensionMismatch(
            f"hadamard_left: vector length {b.shape[0]} != matrix rows {A.shape[0]}"
        )
    return b[:, None] * A


def hadamard_right(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Right-Hadamard product: (A ∘_R b)^{ij} = A^{ij} b^j.

    Scales column j of ``A`` by ``b[j]``.

    Raises:
        DimensionMismatch: If ``len(b)`` differs from the column count of ``A``.
    """
    A = as_matrix(A, "A")
    b = as_vector(b, "b")
    if b.shape[0] != A.shape[1]:
        raise DimensionMismatch(
            f"hadamard_right: vector length {b.shape[0]} != matrix columns {A.shape[1]}"
        )
    return A * b[None, :]
