"""Influence matrix, its eigenbasis and the spectral gap."""

import logging
from typing import Optional

import numpy as np

from ..errors import DimensionMismatch, DomainError, ZeroEigenvalueNotSimple
from ..linalg import as_matrix, as_vector, jacobi_eigs
from ..models import Graph, InfluenceSpectrum, UrnState

logger = logging.getLogger(__name__)

# |1 + μ| below this counts as zero when deciding the gap fallback
GAP_FALLBACK_TOLERANCE = 1e-12
ZERO_EIGENVALUE_TOLERANCE = 1e-9


def influence_matrix(graph: Graph) -> np.ndarray:
    """Influence matrix L of a graph.

    L^{ij} = (d_j / d_i) / (d_i + d_j) for neighbours i ~ j, the diagonal is
    minus the off-diagonal row sum, every other entry is zero.
    """
    d = graph.degree_vector()
    n = graph.n_vertices
    L = np.zeros((n, n))
    for i, j in graph.edges:
        L[i, j] = (d[j] / d[i]) / (d[i] + d[j])
        L[j, i] = (d[i] / d[j]) / (d[i] + d[j])
    L[np.diag_indices(n)] = -L.sum(axis=1)
    return L


def symmetrize(L: np.ndarray, degrees: np.ndarray) -> np.ndarray:
    """Similarity transform S = E L E⁻¹ with E = diag(degrees).

    For an influence matrix S^{ij} = 1 / (d_i + d_j) on edges, so S is symmetric.

    Raises:
        DimensionMismatch: If the shapes disagree.
        DomainError: If some degree is not positive.
    """
    L = as_matrix(L, "L")
    d = as_vector(degrees, "degrees")
    if L.shape != (d.shape[0], d.shape[0]):
        raise DimensionMismatch(f"L has shape {L.shape} but {d.shape[0]} degrees were given")
    if np.any(d <= 0):
        raise DomainError(f"degrees must be positive, vertex {int(np.argmin(d))} has {d.min()}")
    return d[:, None] * L / d[None, :]


def _gap_from_eigenvalues(eigenvalues: np.ndarray) -> float:
    """λ = 1 - max_{i>0} |1 + μ_i|, or 1/2 when that maximum vanishes."""
    nonunit = np.abs(1.0 + np.asarray(eigenvalues[1:], dtype=np.float64))
    largest = float(nonunit.max()) if nonunit.size else 0.0
    if largest <= GAP_FALLBACK_TOLERANCE:
        return 0.5
    return 1.0 - largest


def eigenbasis(graph: Graph) -> InfluenceSpectrum:
    """Diagonalise the influence matrix through its symmetrisation.

    Jacobi on S = E L E⁻¹ gives S = V Λ Vᵀ, hence L = (E⁻¹V) Λ (VᵀE). The zero
    eigenpair is moved first and its column rescaled to exactly all-ones.

    Raises:
        NonConvergence: Propagated from the eigensolver.
        ZeroEigenvalueNotSimple: If zero is a repeated eigenvalue (a bug for
            connected graphs).
    """
    L = influence_matrix(graph)
    d = graph.degree_vector()
    decomposition = jacobi_eigs(symmetrize(L, d))
    mu = decomposition.eigenvalues
    if not np.isrealobj(mu) or not np.isrealobj(decomposition.vectors):
        raise AssertionError("symmetric eigensolve returned complex values")

    scale = max(1.0, float(np.max(np.abs(mu))))
    by_magnitude = np.argsort(np.abs(mu), kind="stable")
    zero = int(by_magnitude[0])
    if mu.size > 1 and abs(mu[by_magnitude[1]]) <= ZERO_EIGENVALUE_TOLERANCE * scale:
        raise ZeroEigenvalueNotSimple(
            f"eigenvalues {mu[by_magnitude[0]]:.3e} and {mu[by_magnitude[1]]:.3e} are both zero"
        )

    rest = [k for k in np.argsort(-mu, kind="stable") if k != zero]
    order = [zero] + [int(k) for k in rest]
    V = decomposition.vectors[:, order]
    mu = mu[order].copy()
    mu[0] = 0.0

    P = V / d[:, None]
    P_inv = V.T * d[None, :]
    # First column ∝ 1; rescale it to exactly 1 and compensate in the first row
    c = float(np.mean(P[:, 0]))
    P[:, 0] = 1.0
    P_inv[0, :] *= c
    p = P_inv[0, :] / P_inv[0, :].sum()
    P_inv[0, :] = p

    gap = _gap_from_eigenvalues(mu)
    logger.debug(f"Spectrum of {graph.n_vertices}-vertex graph: gap={gap:.9f}")
    return InfluenceSpectrum(L=L, P=P, P_inv=P_inv, D=np.diag(mu), gap=gap, p=p.copy())


def spectral_gap(spectrum: InfluenceSpectrum) -> float:
    """Spectral gap λ of A_1 = I + L.

    λ = 1 - max over nonzero eigenvalues μ of |1 + μ|; when that maximum is 0
    (as for K_2) the gap is taken to be 1/2. Always 0 < λ <= 1.
    """
    return _gap_from_eigenvalues(spectrum.eigenvalues)


def a_k_matrix(L: np.ndarray, k: int) -> np.ndarray:
    """A_k = I + L / k: nonnegative, row-stochastic for an influence matrix.

    Raises:
        DomainError: If k < 1.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    L = as_matrix(L, "L")
    return np.eye(L.shape[0]) + L / k


def expected_damped_diffusion(state: UrnState) -> np.ndarray:
    """E_t[γ_{t+1} ∘ L_t] given the weights of ``state``.

    Entry (i, j) for i ~ j is g_j / (|E| (g_i + 1) (g_i + g_j)); the diagonal
    is minus the row sum.
    """
    graph = state.graph
    g = state.g
    n_edges = graph.n_edges
    M = np.zeros((graph.n_vertices, graph.n_vertices))
    for i, j in graph.edges:
        M[i, j] = g[j] / (n_edges * (g[i] + 1.0) * (g[i] + g[j]))
        M[j, i] = g[i] / (n_edges * (g[j] + 1.0) * (g[i] + g[j]))
    M[np.diag_indices(graph.n_vertices)] = -M.sum(axis=1)
    return M


def delta_matrix(
    state: UrnState,
    j: Optional[int] = None,
    influence: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Δ_j = E_j[γ_{j+1} ∘ L_j] - L / (j + 1).

    Args:
        state: State at time j.
        j: Step index; defaults to ``state.t``.
        influence: Precomputed influence matrix of ``state.graph``.
    """
    j = state.t if j is None else j
    if j < 0:
        raise DomainError(f"step index must be >= 0, got {j}")
    L = influence_matrix(state.graph) if influence is None else influence
    return expected_damped_diffusion(state) - L / (j + 1)


def consensus_coordinate(p: np.ndarray, x: np.ndarray) -> float:
    """a = p · x.

    Raises:
        DimensionMismatch: If the lengths differ.
    """
    p = as_vector(p, "p")
    x = as_vector(x, "x")
    if p.shape != x.shape:
        raise DimensionMismatch(f"p has {p.shape[0]} entries but x has {x.shape[0]}")
    return float(p @ x)


def disagreement(x: np.ndarray, a: float) -> np.ndarray:
    """z = x - a·1."""
    return as_vector(x, "x") - a
