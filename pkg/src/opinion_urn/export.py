"""CSV and JSON outputs of the command-line runs."""

import json
import logging
import time
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
import pandas as pd

from . import __version__
from .dynamics import RNG_NAME
from .ensemble import conjectured_exponent
from .graphs import graph_hash, graph_to_json
from .models import (
    ConvergenceReport,
    EnsembleStats,
    Graph,
    InfluenceSpectrum,
    PowerLawFit,
    TrajectoryRecord,
)

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def metadata_block(started: float) -> Dict[str, Any]:
    """Run metadata; the only non-deterministic part of any summary."""
    return {
        "generated_at": datetime.now().isoformat(),
        "runtime_seconds": round(time.monotonic() - started, 3),
        "rng": RNG_NAME,
        "version": __version__,
    }


def dumps(data: Dict[str, Any]) -> str:
    """Serialise a summary with stable key order."""
    return json.dumps(data, indent=2, sort_keys=True)


def write_json(data: Dict[str, Any], path: Path) -> None:
    """Write a JSON document, creating parent directories."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        f.write(dumps(data))
        f.write("\n")
    logger.info(f"Saved {path}")


def spectrum_summary(graph: Graph, spectrum: InfluenceSpectrum, source: str) -> Dict[str, Any]:
    """JSON form of a graph's influence spectrum."""
    return {
        "graph": source,
        "graph_hash": graph_hash(graph),
        "n_vertices": graph.n_vertices,
        "n_edges": graph.n_edges,
        "L": spectrum.L.tolist(),
        "eigenvalues": spectrum.eigenvalues.tolist(),
        "lambda": spectrum.gap,
        "p": spectrum.p.tolist(),
        "conjectured_exponent": conjectured_exponent(spectrum.gap),
    }


def trajectory_frame(trajectory: TrajectoryRecord) -> pd.DataFrame:
    """One row per snapshot: t, x_0..x_{n-1}, g_0..g_{n-1}."""
    n = trajectory.graph.n_vertices
    columns: Dict[str, Any] = {"t": [s.t for s in trajectory.snapshots]}
    x = np.array([s.x for s in trajectory.snapshots]).reshape(-1, n)
    g = np.array([s.g for s in trajectory.snapshots]).reshape(-1, n)
    columns.update({f"x_{i}": x[:, i] for i in range(n)})
    columns.update({f"g_{i}": g[:, i] for i in range(n)})
    return pd.DataFrame(columns)


def trajectory_metadata(
    trajectory: TrajectoryRecord,
    config_echo: Dict[str, Any],
    started: float,
) -> Dict[str, Any]:
    """Sidecar document describing how a trajectory was produced."""
    return {
        "seed": trajectory.seed,
        "rng": trajectory.rng_name,
        "n_steps": trajectory.n_steps,
        "graph": graph_to_json(trajectory.graph),
        "graph_hash": graph_hash(trajectory.graph),
        "config": config_echo,
        "metadata": metadata_block(started),
    }


def save_trajectory(
    trajectory: TrajectoryRecord,
    path: Path,
    config_echo: Dict[str, Any],
    started: float,
) -> Path:
    """Write a trajectory CSV and its ``<csv>.meta.json`` sidecar.

    Returns:
        Path of the sidecar.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    trajectory_frame(trajectory).to_csv(path, index=False, float_format=FLOAT_FORMAT)
    sidecar = path.with_name(path.name + ".meta.json")
    write_json(trajectory_metadata(trajectory, config_echo, started), sidecar)
    logger.info(f"Saved trajectory to {path}")
    return sidecar


def ensemble_frame(stats: EnsembleStats) -> pd.DataFrame:
    """One row per sample time: t, mean_z_sq, mean_a, var_a, n."""
    return pd.DataFrame({
        "t": stats.sample_times,
        "mean_z_sq": stats.mean_z_sq,
        "mean_a": stats.mean_a,
        "var_a": stats.var_a,
        "n": np.full(stats.sample_times.shape, stats.n_trajectories),
    })


def ensemble_summary(
    graph: Graph,
    spectrum: InfluenceSpectrum,
    fit: Optional[PowerLawFit],
    convergence: Optional[ConvergenceReport],
    config_echo: Dict[str, Any],
    base_seed: int,
    started: float,
) -> Dict[str, Any]:
    """JSON summary of an ensemble run."""
    return {
        "graph_hash": graph_hash(graph),
        "lambda": spectrum.gap,
        "conjectured_exponent": conjectured_exponent(spectrum.gap),
        "fit": fit.model_dump(mode="json") if fit is not None else None,
        "convergence": (
            {
                "passed": convergence.passed,
                "checks": [check.model_dump() for check in convergence.checks],
            }
            if convergence is not None
            else None
        ),
        "config": config_echo,
        "seeds": {"base_seed": base_seed, "derivation": "SeedSequence(base_seed, spawn_key=(i,))"},
        "metadata": metadata_block(started),
    }


def save_ensemble(stats: EnsembleStats, summary: Dict[str, Any], path: Path) -> Path:
    """Write the ensemble CSV and its JSON summary next to it.

    Returns:
        Path of the JSON summary.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    ensemble_frame(stats).to_csv(path, index=False, float_format=FLOAT_FORMAT)
    summary_path = path.with_suffix(".json")
    write_json(summary, summary_path)
    logger.info(f"Saved ensemble statistics to {path}")
    return summary_path
