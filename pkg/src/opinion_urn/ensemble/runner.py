"""Monte Carlo ensemble runner."""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..config import config as app_config
from ..dynamics import BatchResult, simulate_batch, trajectory_rng
from ..models import EnsembleConfig, EnsembleStats, InfluenceSpectrum
from ..spectral import eigenbasis
from .grid import default_sample_times

logger = logging.getLogger(__name__)


def _column_mean(values: np.ndarray) -> np.ndarray:
    """Exactly rounded mean of each column, summed in row order."""
    return np.array([math.fsum(column) / values.shape[0] for column in values.T])


def _column_var(values: np.ndarray, mean: np.ndarray) -> np.ndarray:
    if values.shape[0] < 2:
        return np.zeros(values.shape[1])
    return np.array([
        math.fsum((column - m) ** 2) / (values.shape[0] - 1)
        for column, m in zip(values.T, mean)
    ])


def run_ensemble(
    config: EnsembleConfig,
    spectrum: Optional[InfluenceSpectrum] = None,
) -> EnsembleStats:
    """Run ``config.n_trajectories`` seeded trajectories and aggregate them.

    Trajectory ``i`` draws from ``trajectory_rng(base_seed, i)``. Batches of
    trajectories run on a thread pool; results are merged in trajectory-index
    order, so the statistics are bit-identical for any worker count.

    ‖z_t‖² uses each trajectory's own consensus coordinate a_t = p·x_t.

    Args:
        config: Ensemble definition.
        spectrum: Precomputed spectrum of ``config.graph``.

    Returns:
        Immutable EnsembleStats.
    """
    spectrum = spectrum or eigenbasis(config.graph)
    times = config.sample_times or default_sample_times(config.n_steps)
    batch_size = config.batch_size or app_config.batch_size
    workers = app_config.worker_count(config.workers)
    batches: List[Tuple[int, int]] = [
        (start, min(start + batch_size, config.n_trajectories))
        for start in range(0, config.n_trajectories, batch_size)
    ]

    logger.info(
        f"Ensemble: {config.n_trajectories} trajectories x {config.n_steps} steps "
        f"in {len(batches)} batches on {workers} workers"
    )
    started = time.monotonic()

    def run_batch(bounds: Tuple[int, int]) -> BatchResult:
        start, stop = bounds
        rngs = [trajectory_rng(config.base_seed, i) for i in range(start, stop)]
        return simulate_batch(
            config.graph,
            config.u0,
            config.g0,
            config.n_steps,
            rngs,
            sample_times=times,
            consensus=spectrum.p,
            influence=spectrum.L,
        )

    results: Dict[int, BatchResult] = {}
    with ThreadPoolExecutor(max_workers=workers) as executor:
        future_to_batch = {executor.submit(run_batch, bounds): bounds for bounds in batches}
        for future in as_completed(future_to_batch):
            start, stop = future_to_batch[future]
            results[start] = future.result()
            logger.debug(f"Batch [{start}, {stop}) done")

    ordered = [results[start] for start, _ in batches]
    x = np.concatenate([r.x for r in ordered], axis=0)
    s_paths = np.concatenate([r.s for r in ordered if r.s is not None], axis=0)
    m_increment = np.concatenate([r.m_increment for r in ordered if r.m_increment is not None])

    a_paths = x @ spectrum.p
    z_sq = np.sum((x - a_paths[:, :, None]) ** 2, axis=2)

    n = config.n_trajectories
    mean_a = _column_mean(a_paths)
    mean_m = _column_mean(m_increment)
    var_m = _column_var(m_increment, mean_m)

    stats = EnsembleStats(
        sample_times=ordered[0].sample_times,
        mean_z_sq=_column_mean(z_sq),
        mean_a=mean_a,
        var_a=_column_var(a_paths, mean_a),
        mean_m_increment=mean_m,
        se_m_increment=np.sqrt(var_m / n),
        n_trajectories=n,
        a_paths=a_paths,
        s_paths=s_paths,
    )
    logger.info(f"Ensemble finished in {time.monotonic() - started:.1f}s")
    return stats
