"""Probabilistic checks: weight concentration, the Pólya coupling and convergence."""

import logging
import math
from typing import List, Optional, Sequence

import numpy as np
from scipy import stats as scipy_stats

from ..dynamics import simulate_batch, trajectory_rng
from ..dynamics.rng import DRAW_BLOCK, edges_from_uniforms
from ..errors import DomainError, InsufficientData, TrajectoryMismatch
from ..graphs import complete_graph
from ..models import (
    CheckResult,
    ConvergenceReport,
    EnsembleStats,
    Graph,
    HoeffdingReport,
    HoeffdingRow,
    PolyaReport,
)

logger = logging.getLogger(__name__)

DECAY_RATIO = 0.55
KS_THRESHOLD = 0.05
POLYA_BATCH = 200


def hoeffding_bound(deviation: float, n_steps: int) -> float:
    """Two-sided Hoeffding bound 2·exp(-2a²/t)."""
    return 2.0 * math.exp(-2.0 * deviation ** 2 / n_steps)


def hoeffding_check(
    graph: Graph,
    n_steps: int,
    n_trials: int,
    seed: int,
    deviations: Optional[Sequence[float]] = None,
) -> HoeffdingReport:
    """Compare the spread of the total weights with the Hoeffding bound.

    g_t(i) - g_0(i) counts the steps whose edge touches i, a binomial with mean
    t·d_i/|E|. The edge of each step comes from the first uniform of the same
    two-per-step stream the dynamics uses, drawn from ``trajectory_rng(seed, k)``
    for trial k.

    Args:
        graph: Graph to sample edges from.
        n_steps: Horizon t.
        n_trials: Independent trials.
        seed: Base seed.
        deviations: Thresholds a (default √t and 2√t).

    Returns:
        HoeffdingReport with one row per (vertex, deviation).
    """
    if n_steps < 1 or n_trials < 1:
        raise DomainError(f"n_steps and n_trials must be >= 1, got {n_steps} and {n_trials}")
    if deviations is None:
        deviations = (math.sqrt(n_steps), 2.0 * math.sqrt(n_steps))
    ei, ej = graph.endpoints()
    n = graph.n_vertices
    expected = n_steps * graph.degree_vector() / graph.n_edges

    counts = np.empty((n_trials, n))
    for trial in range(n_trials):
        rng = trajectory_rng(seed, trial)
        edges = edges_from_uniforms(rng.random((n_steps, 2))[:, 0], graph.n_edges)
        counts[trial] = np.bincount(ei[edges], minlength=n) + np.bincount(ej[edges], minlength=n)
    spread = np.abs(counts - expected)

    rows: List[HoeffdingRow] = []
    for a in deviations:
        bound = hoeffding_bound(a, n_steps)
        capped = min(bound, 1.0)
        se = math.sqrt(capped * (1.0 - capped) / n_trials)
        for vertex in range(n):
            frequency = float(np.mean(spread[:, vertex] > a))
            rows.append(HoeffdingRow(
                vertex=vertex,
                deviation=float(a),
                frequency=frequency,
                bound=bound,
                standard_error=se,
                exceeded=frequency > bound + 3.0 * se,
            ))
    report = HoeffdingReport(n_steps=n_steps, n_trials=n_trials, rows=rows)
    if not report.passed:
        logger.warning(f"Hoeffding bound exceeded on a {n}-vertex graph at t = {n_steps}")
    return report


def reference_urn_paths(
    u0: float,
    g0: float,
    n_steps: int,
    rngs: Sequence[np.random.Generator],
) -> np.ndarray:
    """Opinion paths u/g of single Pólya urns, shape (len(rngs), n_steps + 1).

    Each step adds one ball of the drawn colour; the draw is U when the
    second uniform of the step is below u/g. The first uniform is consumed
    and ignored so the stream lines up with a two-vertex urn model.
    """
    batch = len(rngs)
    u = np.full(batch, float(u0))
    g = np.full(batch, float(g0))
    paths = np.empty((batch, n_steps + 1))
    paths[:, 0] = u / g
    talk = np.empty((batch, 0))
    for t in range(1, n_steps + 1):
        k = (t - 1) % DRAW_BLOCK
        if k == 0:
            size = min(DRAW_BLOCK, n_steps - t + 1)
            talk = np.stack([rng.random((size, 2))[:, 1] for rng in rngs]).reshape(batch, size)
        u = u + (talk[:, k] < u / g)
        g = g + 1.0
        paths[:, t] = u / g
    return paths


def polya_equivalence(
    u0: float,
    g0: float,
    n_steps: int,
    n_trials: int,
    seed: int,
    ks_threshold: float = KS_THRESHOLD,
    batch_size: int = POLYA_BATCH,
) -> PolyaReport:
    """Couple the two-vertex model with a single Pólya urn.

    Trials 0..n-1 run the model on K₂ from (u0, u0)/(g0, g0) and the reference
    urn from u0/g0 on identical streams; every opinion path must match
    bit-for-bit. Terminal opinions of the model are then compared with reference
    terminals on the disjoint streams n..2n-1 by a two-sample KS statistic.

    Raises:
        DomainError: Unless 0 <= u0 <= g0 and g0 > 0.
        TrajectoryMismatch: A coupled path differs.
    """
    if not (g0 > 0 and 0 <= u0 <= g0):
        raise DomainError(f"need 0 <= u0 <= g0 and g0 > 0, got u0 = {u0}, g0 = {g0}")
    if n_trials < 1:
        raise DomainError(f"n_trials must be >= 1, got {n_trials}")

    graph = complete_graph(2)
    times = list(range(n_steps + 1))
    model_terminal = np.empty(n_trials)
    reference_terminal = np.empty(n_trials)

    for start in range(0, n_trials, batch_size):
        stop = min(start + batch_size, n_trials)
        model = simulate_batch(
            graph,
            [u0, u0],
            [g0, g0],
            n_steps,
            [trajectory_rng(seed, i) for i in range(start, stop)],
            sample_times=times,
        )
        reference = reference_urn_paths(
            u0, g0, n_steps, [trajectory_rng(seed, i) for i in range(start, stop)]
        )
        for vertex in (0, 1):
            mismatch = np.flatnonzero(np.any(model.x[:, :, vertex] != reference, axis=1))
            if mismatch.size:
                trial = start + int(mismatch[0])
                raise TrajectoryMismatch(
                    f"trial {trial}: vertex {vertex} opinion path differs from the Pólya urn"
                )
        model_terminal[start:stop] = model.x[:, -1, 0]
        reference_terminal[start:stop] = reference_urn_paths(
            u0,
            g0,
            n_steps,
            [trajectory_rng(seed, n_trials + i) for i in range(start, stop)],
        )[:, -1]

    ks = float(scipy_stats.ks_2samp(model_terminal, reference_terminal).statistic)
    logger.info(f"Pólya coupling: {n_trials} paths identical, KS statistic {ks:.4f}")
    return PolyaReport(
        u0=u0,
        g0=g0,
        n_steps=n_steps,
        n_trials=n_trials,
        coupled_identical=True,
        ks_statistic=ks,
        ks_threshold=ks_threshold,
    )


def _spread(values: np.ndarray) -> float:
    return float(np.var(values, ddof=1)) if values.size > 1 else 0.0


def convergence_report(stats: EnsembleStats, decay_ratio: float = DECAY_RATIO) -> ConvergenceReport:
    """Finite-horizon evidence that opinions reach a common random limit.

    Checks that ‖z_t‖² decays from an early sample time to T, that the
    increments of a_t over [T/2, T] spread less than over [T/4, T/2], and, when
    tracked, that s_t moves less over [T/2, T] than over [T/4, T/2].

    Raises:
        InsufficientData: Fewer than three sample times.
    """
    times = stats.sample_times
    if times.size < 3:
        raise InsufficientData(f"{times.size} sample times, need at least 3")
    horizon = int(times[-1])

    positive = np.flatnonzero(times > 0)
    early_candidates = np.flatnonzero(times >= horizon / 100)
    early = int(early_candidates[0]) if early_candidates.size else int(positive[0])
    if early == times.size - 1 and positive.size:
        early = int(positive[0])
    late_z, early_z = float(stats.mean_z_sq[-1]), float(stats.mean_z_sq[early])
    checks = [CheckResult(
        name="disagreement_decay",
        passed=late_z <= decay_ratio * early_z,
        detail=f"E|z|^2 at t={horizon}: {late_z:.6g}; at t={int(times[early])}: {early_z:.6g}",
    )]

    half = stats.index_at_or_before(horizon / 2)
    quarter = stats.index_at_or_before(horizon / 4)
    a = stats.a_paths
    recent = _spread(a[:, -1] - a[:, half])
    earlier = _spread(a[:, half] - a[:, quarter])
    checks.append(CheckResult(
        name="consensus_cauchy",
        passed=recent <= earlier,
        detail=f"var(a_T - a_T/2) = {recent:.6g}, var(a_T/2 - a_T/4) = {earlier:.6g}",
    ))

    if stats.s_paths is not None:
        s = stats.s_paths
        recent = float(np.mean(np.abs(s[:, -1] - s[:, half])))
        earlier = float(np.mean(np.abs(s[:, half] - s[:, quarter])))
        checks.append(CheckResult(
            name="drift_cauchy",
            passed=recent <= earlier,
            detail=f"E|s_T - s_T/2| = {recent:.6g}, E|s_T/2 - s_T/4| = {earlier:.6g}",
        ))

    report = ConvergenceReport(checks=checks)
    if not report.passed:
        logger.warning(f"Convergence checks failed: {[c.name for c in checks if not c.passed]}")
    return report
