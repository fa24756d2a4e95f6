"""Ensemble configuration, statistics and power-law fits."""

from typing import Any, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from .graph import Graph
from .state import frozen_array


class EnsembleConfig(BaseModel):
    """Monte Carlo ensemble definition."""

    graph: Graph = Field(..., description="Graph the trajectories run on")
    u0: List[float] = Field(..., description="Initial weights on U")
    g0: List[float] = Field(..., description="Initial total weights")
    n_steps: int = Field(..., description="Conversations per trajectory", ge=0)
    n_trajectories: int = Field(..., description="Number of trajectories", ge=1)
    base_seed: int = Field(
        ..., description="Seed split into per-trajectory streams", ge=0, lt=2**64
    )
    sample_times: Optional[List[int]] = Field(
        None, description="Sample times (default: log-spaced, 20 per decade)"
    )
    workers: Optional[int] = Field(None, description="Parallelism hint", ge=1)
    batch_size: Optional[int] = Field(None, description="Trajectories per vectorised batch", ge=1)

    class Config:
        """Pydantic config."""
        frozen = True
        extra = "forbid"

    @model_validator(mode="after")
    def _check_shapes(self) -> "EnsembleConfig":
        n = self.graph.n_vertices
        if len(self.u0) != n or len(self.g0) != n:
            raise ValueError(
                f"u0 and g0 must have {n} entries, got {len(self.u0)} and {len(self.g0)}"
            )
        if self.sample_times is not None:
            times = self.sample_times
            if any(b <= a for a, b in zip(times, times[1:])):
                raise ValueError("sample_times must be strictly increasing")
            if times and (times[0] < 0 or times[-1] > self.n_steps):
                raise ValueError(f"sample_times must lie in [0, {self.n_steps}]")
        return self


class EnsembleStats(BaseModel):
    """Per-sample-time aggregates over an ensemble.

    ``a_paths`` and ``s_paths`` keep the per-trajectory consensus coordinate
    and drift part at each sample time (rows in trajectory-index order) for
    the Cauchy-type convergence checks.
    """

    sample_times: np.ndarray
    mean_z_sq: np.ndarray
    mean_a: np.ndarray
    var_a: np.ndarray
    mean_m_increment: np.ndarray
    se_m_increment: np.ndarray
    n_trajectories: int = Field(..., ge=1)
    a_paths: np.ndarray
    s_paths: Optional[np.ndarray] = None

    class Config:
        """Pydantic config."""
        frozen = True
        arbitrary_types_allowed = True

    @field_validator("sample_times", mode="before")
    @classmethod
    def _freeze_times(cls, value: Any) -> np.ndarray:
        return frozen_array(value, dtype=np.int64)

    @field_validator(
        "mean_z_sq", "mean_a", "var_a", "mean_m_increment", "se_m_increment", "a_paths", "s_paths",
        mode="before",
    )
    @classmethod
    def _freeze(cls, value: Any) -> Optional[np.ndarray]:
        return None if value is None else frozen_array(value)

    def index_at_or_before(self, t: float) -> int:
        """Index of the last sample time <= t."""
        return int(np.searchsorted(self.sample_times, t, side="right")) - 1


class PowerLawFit(BaseModel):
    """Least-squares line through (log t, log y)."""

    exponent: float = Field(..., description="Slope of the log-log fit")
    amplitude: float = Field(..., description="exp(intercept)", gt=0)
    r_squared: float = Field(..., description="Coefficient of determination", ge=0, le=1)
    window: Tuple[int, int] = Field(..., description="Fitted range of t (inclusive)")
    n_points: int = Field(..., description="Sample times used", ge=2)

    class Config:
        """Pydantic config."""
        frozen = True

    def predict(self, t: float) -> float:
        """Fitted value amplitude · t^exponent."""
        return self.amplitude * t ** self.exponent
