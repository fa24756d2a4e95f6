"""Scalar urn transitions and seeded trajectories."""

import logging
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import (
    DimensionMismatch,
    DomainError,
    EdgeIndexError,
    MissingStepRecords,
    NonpositiveTotalWeight,
    OpinionOutOfRange,
)
from ..models import Graph, Snapshot, StepRecord, TrajectoryRecord, UrnState
from .rng import RNG_NAME, edge_from_uniform, make_rng

logger = logging.getLogger(__name__)


def init_state(graph: Graph, u0: Sequence[float], g0: Sequence[float]) -> UrnState:
    """Build the state at t = 0.

    ``u0_i = 0`` is allowed, so opinions may start at exactly 0 or 1.

    Raises:
        DimensionMismatch: If ``u0`` or ``g0`` does not have one entry per vertex.
        NonpositiveTotalWeight: If some ``g0_i <= 0``.
        OpinionOutOfRange: If some ``u0_i`` lies outside ``[0, g0_i]``.
    """
    u = np.asarray(u0, dtype=np.float64)
    g = np.asarray(g0, dtype=np.float64)
    for name, values in (("u0", u), ("g0", g)):
        if values.shape != (graph.n_vertices,):
            raise DimensionMismatch(
                f"{name} must have {graph.n_vertices} entries, got shape {values.shape}"
            )
        bad = np.flatnonzero(~np.isfinite(values))
        if bad.size:
            raise DomainError(f"{name}[{bad[0]}] is not finite")

    nonpositive = np.flatnonzero(g <= 0)
    if nonpositive.size:
        i = int(nonpositive[0])
        raise NonpositiveTotalWeight(f"g0[{i}] = {g[i]} must be > 0")
    outside = np.flatnonzero((u < 0) | (u > g))
    if outside.size:
        i = int(outside[0])
        raise OpinionOutOfRange(f"u0[{i}] = {u[i]} must lie in [0, g0[{i}] = {g[i]}]")

    return UrnState(graph=graph, t=0, u=u, g=g)


def edge_endpoints(graph: Graph, edge: int) -> Tuple[int, int]:
    """Return (i, j) for an edge index, checking bounds."""
    if not 0 <= edge < graph.n_edges:
        raise EdgeIndexError(f"edge index {edge} outside [0, {graph.n_edges})")
    return graph.edges[edge]


def pooled_opinion(state: UrnState, edge: int) -> float:
    """Pooled opinion (u_i + u_j) / (g_i + g_j) of the endpoints of ``edge``."""
    i, j = edge_endpoints(state.graph, edge)
    return float((state.u[i] + state.u[j]) / (state.g[i] + state.g[j]))


def apply_step(state: UrnState, edge: int, outcome: int) -> Tuple[UrnState, StepRecord]:
    """Apply one conversation with a given edge and outcome.

    The pooled probability is taken from the pre-step weights; both endpoint
    totals grow by one, and both ``u`` entries grow by one iff ``outcome == 1``.

    Raises:
        EdgeIndexError: If ``edge`` is out of range.
        DomainError: If ``outcome`` is not 0 or 1.
    """
    if outcome not in (0, 1):
        raise DomainError(f"outcome must be 0 or 1, got {outcome}")
    i, j = edge_endpoints(state.graph, edge)
    p = float((state.u[i] + state.u[j]) / (state.g[i] + state.g[j]))

    u = state.u.copy()
    g = state.g.copy()
    g[i] += 1.0
    g[j] += 1.0
    if outcome == 1:
        u[i] += 1.0
        u[j] += 1.0

    record = StepRecord(
        t=state.t + 1,
        edge=edge,
        p=p,
        outcome=outcome,
        fluctuation=outcome - p,
    )
    return UrnState(graph=state.graph, t=state.t + 1, u=u, g=g), record


def step(state: UrnState, rng: np.random.Generator) -> Tuple[UrnState, StepRecord]:
    """Draw an edge uniformly, hold the conversation and update the weights."""
    r_edge, r_talk = rng.random(2)
    edge = edge_from_uniform(float(r_edge), state.graph.n_edges)
    p = pooled_opinion(state, edge)
    return apply_step(state, edge, 1 if r_talk < p else 0)


def normalize_sample_times(sample_times: Optional[Sequence[int]], n_steps: int) -> List[int]:
    """Sort and deduplicate sample times, checking they lie in [0, n_steps].

    ``None`` means ``[0, n_steps]``.

    Raises:
        DomainError: If a time is outside [0, n_steps].
    """
    if n_steps < 0:
        raise DomainError(f"n_steps must be >= 0, got {n_steps}")
    if sample_times is None:
        return sorted({0, n_steps})
    times = sorted({int(t) for t in sample_times})
    if times and (times[0] < 0 or times[-1] > n_steps):
        raise DomainError(f"sample times must lie in [0, {n_steps}], got {times[0]}..{times[-1]}")
    return times


def run_trajectory(
    graph: Graph,
    u0: Sequence[float],
    g0: Sequence[float],
    n_steps: int,
    seed: int,
    sample_times: Optional[Sequence[int]] = None,
    record_steps: bool = False,
) -> TrajectoryRecord:
    """Run one seeded trajectory.

    Args:
        graph: Graph the process runs on.
        u0: Initial weights on U.
        g0: Initial total weights.
        n_steps: Number of conversations.
        seed: 64-bit seed of the trajectory's generator.
        sample_times: Times at which to snapshot x and g (default: 0 and n_steps).
        record_steps: Keep every StepRecord (needed for decomposition and replay).

    Returns:
        TrajectoryRecord, reproducible bit-for-bit from the same inputs.
    """
    initial = init_state(graph, u0, g0)
    state = initial
    times = normalize_sample_times(sample_times, n_steps)
    wanted = set(times)
    rng = make_rng(seed)

    snapshots: List[Snapshot] = []
    steps: Optional[List[StepRecord]] = [] if record_steps else None
    if 0 in wanted:
        snapshots.append(Snapshot(t=0, x=state.x, g=state.g))

    for _ in range(n_steps):
        state, record = step(state, rng)
        if steps is not None:
            steps.append(record)
        if state.t in wanted:
            snapshots.append(Snapshot(t=state.t, x=state.x, g=state.g))

    logger.debug(f"Trajectory seed={seed}: {n_steps} steps, {len(snapshots)} snapshots")
    return TrajectoryRecord(
        graph=graph,
        u0=initial.u,
        g0=initial.g,
        seed=seed,
        n_steps=n_steps,
        rng_name=RNG_NAME,
        snapshots=snapshots,
        steps=steps,
    )


def replay_states(trajectory: TrajectoryRecord) -> Iterator[UrnState]:
    """Yield every state 0..n_steps rebuilt from the recorded steps.

    Raises:
        MissingStepRecords: If the trajectory was run without ``record_steps``.
    """
    if trajectory.steps is None:
        raise MissingStepRecords(
            f"trajectory seed={trajectory.seed} was recorded without step records"
        )
    state = init_state(trajectory.graph, trajectory.u0, trajectory.g0)
    yield state
    for record in trajectory.steps:
        state, _ = apply_step(state, record.edge, record.outcome)
        yield state
