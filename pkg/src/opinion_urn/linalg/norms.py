"""Operator norm by power iteration and the row-norm sandwich."""

import logging
from typing import Tuple

import numpy as np

from ..errors import DimensionMismatch, NonConvergence
from .hadamard import as_matrix

logger = logging.getLogger(__name__)

MAX_ITERATIONS = 100_000
RESIDUAL_TOLERANCE = 1e-10
RESTART_SEED = 0x5EED
STAGNATION_TOLERANCE = 1e-15
STAGNATION_WINDOW = 50


def _power_iteration(
    G: np.ndarray,
    v: np.ndarray,
    restarts: np.random.Generator,
    max_iterations: int,
) -> float:
    """Dominant eigenvalue of the symmetric PSD matrix G, starting from unit ``v``."""
    rho = 0.0
    stalled = 0
    for iteration in range(max_iterations):
        w = G @ v
        norm_w = float(np.linalg.norm(w))
        if norm_w == 0.0:
            # Start vector lies in the null space
            v = restarts.standard_normal(G.shape[0])
            v /= np.linalg.norm(v)
            continue
        previous, rho = rho, float(v @ w)
        residual = float(np.linalg.norm(w - rho * v))
        # Clustered top singular values: the Rayleigh quotient settles before the residual
        stalled = stalled + 1 if abs(rho - previous) <= STAGNATION_TOLERANCE * abs(rho) else 0
        if residual <= RESIDUAL_TOLERANCE * abs(rho) or stalled >= STAGNATION_WINDOW:
            logger.debug(f"Power iteration converged in {iteration + 1} iterations")
            return max(rho, 0.0)
        v = w / norm_w

    raise NonConvergence(
        f"power iteration did not converge in {max_iterations} iterations (rho={rho:.6e})"
    )


def operator_norm(A: np.ndarray, max_iterations: int = MAX_ITERATIONS) -> float:
    """Largest singular value of ``A`` (Euclidean operator norm).

    Power iteration on AᵀA, with A first scaled to unit max-entry. The first
    run starts from the normalised all-ones vector; since that vector can be
    an eigenvector of a smaller singular value, a second run starts from a
    vector drawn from a fixed sub-seed and the larger result is kept. Each run
    stops once the eigen-residual ||AᵀA v - ρ v|| is below ``1e-10 * ρ``.

    Raises:
        NonConvergence: If the residual target is not met within ``max_iterations``.
    """
    A = as_matrix(A, "A")
    if A.size == 0:
        return 0.0
    scale = float(np.max(np.abs(A)))
    if scale == 0.0:
        return 0.0
    B = A / scale
    G = B.T @ B
    n = G.shape[0]

    restarts = np.random.default_rng(RESTART_SEED)
    ones = np.ones(n) / np.sqrt(n)
    random_start = restarts.standard_normal(n)
    random_start /= np.linalg.norm(random_start)
    rho = max(
        _power_iteration(G, ones, restarts, max_iterations),
        _power_iteration(G, random_start, restarts, max_iterations),
    )
    return scale * float(np.sqrt(rho))


def row_norm_bounds(A: np.ndarray) -> Tuple[float, float]:
    """Return ``(max_row_norm, op_norm)`` for a square matrix.

    These satisfy max_row_norm <= op_norm <= √n · max_row_norm.

    Raises:
        DimensionMismatch: If ``A`` is not square.
    """
    A = as_matrix(A, "A")
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatch(f"row_norm_bounds needs a square matrix, got {A.shape}")
    max_row_norm = float(np.max(np.linalg.norm(A, axis=1))) if A.size else 0.0
    return max_row_norm, operator_norm(A)
