"""Realized diffusion matrices and the stochastic heat equation.

One step of the urn satisfies, exactly and pathwise,

    x_{t+1} - x_t = γ_{t+1} ∘ (L_t x_t + W_{t+1})

where L_t is the four-entry diffusion matrix of the chosen edge, γ = 1/g and
W_{t+1} carries the centred conversation outcome at the two endpoints.
"""

import numpy as np

from ..errors import DimensionMismatch, DomainError, MismatchedStates
from ..linalg import as_matrix, hadamard_left
from ..models import StepRecord, TrajectoryRecord, UrnState
from .urn import edge_endpoints, replay_states


def diffusion_matrix(state: UrnState, edge: int) -> np.ndarray:
    """Diffusion matrix L_t for ``edge`` drawn from the pre-step ``state``.

    For the chosen (i, j): L^{ij} = g_j/(g_i+g_j), L^{ii} = -L^{ij},
    L^{ji} = g_i/(g_i+g_j), L^{jj} = -L^{ji}; every row sums to zero.
    """
    i, j = edge_endpoints(state.graph, edge)
    total = state.g[i] + state.g[j]
    L = np.zeros((state.graph.n_vertices, state.graph.n_vertices))
    L[i, j] = state.g[j] / total
    L[i, i] = -L[i, j]
    L[j, i] = state.g[i] / total
    L[j, j] = -L[j, i]
    return L


def lambda_matrix(post_state: UrnState, Lt: np.ndarray) -> np.ndarray:
    """One-step transition Λ_t = I + γ_{t+1} ∘ L_t.

    ``post_state`` is the state at t+1, so its γ already reflects the
    incremented totals. The result is row-stochastic and nonnegative.
    """
    Lt = as_matrix(Lt, "Lt")
    n = post_state.graph.n_vertices
    if Lt.shape != (n, n):
        raise DimensionMismatch(f"Lt must be {n}x{n}, got {Lt.shape}")
    return np.eye(n) + hadamard_left(post_state.gamma, Lt)


def noise_vector(state: UrnState, record: StepRecord) -> np.ndarray:
    """W_{t+1}: the centred outcome at both endpoints of the chosen edge."""
    i, j = state.graph.edges[record.edge]
    W = np.zeros(state.graph.n_vertices)
    W[i] = record.fluctuation
    W[j] = record.fluctuation
    return W


def she_residual(pre: UrnState, rec: StepRecord, post: UrnState) -> float:
    """Euclidean norm of the stochastic heat equation defect for one step.

    Raises:
        MismatchedStates: If the three arguments are not one transition.
    """
    if post.t != pre.t + 1 or rec.t != post.t:
        raise MismatchedStates(
            f"states at t={pre.t} and t={post.t} with record t={rec.t} are not one step"
        )
    if pre.graph is not post.graph and pre.graph != post.graph:
        raise MismatchedStates("pre and post states live on different graphs")

    Lt = diffusion_matrix(pre, rec.edge)
    predicted = post.gamma * (Lt @ pre.x + noise_vector(pre, rec))
    return float(np.linalg.norm((post.x - pre.x) - predicted))


def lambda_window_product(trajectory: TrajectoryRecord, start: int, length: int) -> np.ndarray:
    """Product Λ_{start+length-1} ··· Λ_{start} along a recorded trajectory.

    ``length = 0`` gives the identity.

    Raises:
        DomainError: If the window leaves [0, n_steps].
        MissingStepRecords: If the trajectory has no step records.
    """
    if start < 0 or length < 0 or start + length > trajectory.n_steps:
        raise DomainError(
            f"window [{start}, {start + length}) outside [0, {trajectory.n_steps}]"
        )
    product = np.eye(trajectory.graph.n_vertices)
    if length == 0:
        return product

    states = replay_states(trajectory)
    pre = next(states)
    assert trajectory.steps is not None
    for record, post in zip(trajectory.steps, states):
        if pre.t >= start + length:
            break
        if pre.t >= start:
            product = lambda_matrix(post, diffusion_matrix(pre, record.edge)) @ product
        pre = post
    return product
