"""Vectorised trajectory kernel.

Runs a batch of independent trajectories in lock-step. Trajectory ``b`` reads
its draws only from ``rngs[b]`` and performs the same floating-point operations
as ``urn.step``, so each row of a batch equals the corresponding
``run_trajectory`` output bit-for-bit whatever the batch composition.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..errors import DimensionMismatch
from ..models import Graph
from .rng import DRAW_BLOCK, edges_from_uniforms
from .urn import init_state, normalize_sample_times

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BatchResult:
    """Sampled output of a batch of trajectories.

    Attributes:
        sample_times: Sample times, shape (S,).
        x: Opinions at the sample times, shape (B, S, n).
        g: Total weights at the sample times, shape (B, S, n).
        s: Accumulated drift part s_t of the consensus coordinate, shape (B, S),
            or None when the decomposition was not tracked.
        m_increment: m_t - m_{t-1} at each sample time (0 at t = 0), shape (B, S),
            or None when the decomposition was not tracked.
    """

    sample_times: np.ndarray
    x: np.ndarray
    g: np.ndarray
    s: Optional[np.ndarray] = None
    m_increment: Optional[np.ndarray] = None


def _consensus_drift(
    x: np.ndarray,
    g: np.ndarray,
    ei: np.ndarray,
    ej: np.ndarray,
    consensus: np.ndarray,
    consensus_influence: np.ndarray,
    j: int,
) -> np.ndarray:
    """p · Δ_j x_j for every trajectory in the batch.

    Δ_j = E_j[γ_{j+1} ∘ L_j] - L/(j+1); the expectation is summed edge by edge.
    """
    n_edges = ei.shape[0]
    gi = g[:, ei]
    gj = g[:, ej]
    pair = n_edges * (gi + gj)
    flow_i = consensus[ei] * gj / ((gi + 1.0) * pair)
    flow_j = consensus[ej] * gi / ((gj + 1.0) * pair)
    expected = np.sum((x[:, ej] - x[:, ei]) * (flow_i - flow_j), axis=1)
    return expected - (x @ consensus_influence) / (j + 1)


def simulate_batch(
    graph: Graph,
    u0: Sequence[float],
    g0: Sequence[float],
    n_steps: int,
    rngs: Sequence[np.random.Generator],
    sample_times: Optional[Sequence[int]] = None,
    consensus: Optional[np.ndarray] = None,
    influence: Optional[np.ndarray] = None,
) -> BatchResult:
    """Simulate ``len(rngs)`` trajectories from a common initial state.

    Args:
        graph: Graph the process runs on.
        u0: Initial weights on U.
        g0: Initial total weights.
        n_steps: Number of conversations per trajectory.
        rngs: One generator per trajectory.
        sample_times: Times at which to record (default: 0 and n_steps).
        consensus: Consensus left-vector p; with ``influence`` enables tracking
            of s_t and of the martingale increments.
        influence: Influence matrix L.

    Returns:
        BatchResult with one row per generator.
    """
    initial = init_state(graph, u0, g0)
    times = normalize_sample_times(sample_times, n_steps)
    slot = {t: k for k, t in enumerate(times)}
    batch = len(rngs)
    n = graph.n_vertices
    n_edges = graph.n_edges
    ei, ej = graph.endpoints()
    rows = np.arange(batch)

    track = consensus is not None
    if track:
        if influence is None:
            raise DimensionMismatch("tracking the decomposition needs the influence matrix")
        consensus = np.asarray(consensus, dtype=np.float64)
        consensus_influence = consensus @ np.asarray(influence, dtype=np.float64)
        if consensus.shape != (n,) or consensus_influence.shape != (n,):
            raise DimensionMismatch(f"consensus vector and influence matrix must have size {n}")

    u = np.tile(initial.u, (batch, 1))
    g = np.tile(initial.g, (batch, 1))
    xs = np.empty((batch, len(times), n))
    gs = np.empty((batch, len(times), n))
    s_out = np.zeros((batch, len(times))) if track else None
    m_out = np.zeros((batch, len(times))) if track else None
    s = np.zeros(batch)

    if 0 in slot:
        xs[:, slot[0]] = u / g
        gs[:, slot[0]] = g

    block_edges = np.empty((batch, 0), dtype=np.int64)
    block_talk = np.empty((batch, 0))

    for t in range(1, n_steps + 1):
        k = (t - 1) % DRAW_BLOCK
        if k == 0:
            size = min(DRAW_BLOCK, n_steps - t + 1)
            draws = np.stack([rng.random((size, 2)) for rng in rngs]).reshape(batch, size, 2)
            block_edges = edges_from_uniforms(draws[:, :, 0], n_edges)
            block_talk = draws[:, :, 1]

        sampled = t in slot
        if track:
            x_prev = u / g
            drift = _consensus_drift(x_prev, g, ei, ej, consensus, consensus_influence, t - 1)
            s += drift
            if sampled:
                a_prev = x_prev @ consensus

        edge = block_edges[:, k]
        i = ei[edge]
        j = ej[edge]
        ui = u[rows, i]
        uj = u[rows, j]
        gi = g[rows, i]
        gj = g[rows, j]
        pooled = (ui + uj) / (gi + gj)
        agreed = (block_talk[:, k] < pooled).astype(np.float64)
        u[rows, i] = ui + agreed
        u[rows, j] = uj + agreed
        g[rows, i] = gi + 1.0
        g[rows, j] = gj + 1.0

        if sampled:
            column = slot[t]
            xs[:, column] = u / g
            gs[:, column] = g
            if track:
                s_out[:, column] = s
                m_out[:, column] = (xs[:, column] @ consensus - a_prev) - drift

    logger.debug(f"Simulated batch of {batch} trajectories x {n_steps} steps")
    return BatchResult(
        sample_times=np.asarray(times, dtype=np.int64),
        x=xs,
        g=gs,
        s=s_out,
        m_increment=m_out,
    )
