"""Cyclic Jacobi eigensolver for dense symmetric matrices."""

import logging
from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatch, NonConvergence, NotSymmetric
from .hadamard import as_matrix

logger = logging.getLogger(__name__)

SYMMETRY_TOLERANCE = 1e-10
OFF_DIAGONAL_TOLERANCE = 1e-13
MAX_SWEEPS = 100


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Eigenpairs of a symmetric matrix.

    ``vectors[:, k]`` is the unit eigenvector for ``eigenvalues[k]``; eigenvalues
    are sorted ascending.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        """Return V diag(λ) Vᵀ."""
        return (self.vectors * self.eigenvalues[None, :]) @ self.vectors.T


def _off_diagonal_norm(S: np.ndarray) -> float:
    return float(np.linalg.norm(S - np.diag(np.diag(S))))


def jacobi_eigs(S: np.ndarray, max_sweeps: int = MAX_SWEEPS) -> EigenDecomposition:
    """Diagonalise a symmetric matrix by cyclic Jacobi rotations.

    Sweeps over all (p, q) pairs above the diagonal until the off-diagonal
    Frobenius mass drops below ``1e-13 * ||S||_F``.

    Args:
        S: Symmetric n×n matrix.
        max_sweeps: Sweep budget.

    Returns:
        EigenDecomposition with ascending eigenvalues and orthonormal vectors.

    Raises:
        DimensionMismatch: If ``S`` is not square.
        NotSymmetric: If ``max|S - Sᵀ| >= 1e-10``.
        NonConvergence: If the sweep budget is exhausted.
    """
    S = as_matrix(S, "S")
    n, m = S.shape
    if n != m:
        raise DimensionMismatch(f"jacobi_eigs needs a square matrix, got {S.shape}")
    asymmetry = float(np.max(np.abs(S - S.T))) if n else 0.0
    if asymmetry >= SYMMETRY_TOLERANCE:
        raise NotSymmetric(f"matrix asymmetry {asymmetry:.3e} exceeds {SYMMETRY_TOLERANCE}")

    A = 0.5 * (S + S.T)
    V = np.eye(n)
    threshold = OFF_DIAGONAL_TOLERANCE * float(np.linalg.norm(A))

    for sweep in range(max_sweeps):
        if _off_diagonal_norm(A) <= threshold:
            logger.debug(f"Jacobi converged after {sweep} sweeps (n={n})")
            return _sorted(np.diag(A).copy(), V)

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                # Rotation angle zeroing A[p, q]
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                row_p = A[p, :].copy()
                row_q = A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                A[p, q] = A[q, p] = 0.0

                vec_p = V[:, p].copy()
                vec_q = V[:, q].copy()
                V[:, p] = c * vec_p - s * vec_q
                V[:, q] = s * vec_p + c * vec_q

    if _off_diagonal_norm(A) <= threshold:
        return _sorted(np.diag(A).copy(), V)
    raise NonConvergence(
        f"Jacobi did not converge in {max_sweeps} sweeps "
        f"(off-diagonal mass {_off_diagonal_norm(A):.3e}, target {threshold:.3e})"
    )


def _sorted(eigenvalues: np.ndarray, vectors: np.ndarray) -> EigenDecomposition:
    order = np.argsort(eigenvalues, kind="stable")
    return EigenDecomposition(eigenvalues=eigenvalues[order], vectors=vectors[:, order].copy())
