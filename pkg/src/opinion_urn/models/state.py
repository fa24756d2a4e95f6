"""Urn state and trajectory records."""

from dataclasses import dataclass
from typing import Any, List, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from .graph import Graph


def frozen_array(values: Any, dtype: Any = np.float64) -> np.ndarray:
    """Read-only copy of ``values``."""
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class UrnState:
    """Per-vertex weights at one time step.

    A plain frozen dataclass: one is created per simulated step.

    ``u`` is the weight on state U and ``g`` the total weight; the weight on
    state V is ``g - u``. Arrays are stored read-only.
    """

    graph: Graph
    t: int
    u: np.ndarray
    g: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", frozen_array(self.u))
        object.__setattr__(self, "g", frozen_array(self.g))

    @property
    def x(self) -> np.ndarray:
        """Opinions u_i / g_i."""
        return self.u / self.g

    @property
    def v(self) -> np.ndarray:
        """Weights on state V."""
        return self.g - self.u

    @property
    def gamma(self) -> np.ndarray:
        """Damping vector 1 / g_i."""
        return 1.0 / self.g


@dataclass(frozen=True)
class StepRecord:
    """One transition from state t-1 to state t."""

    t: int
    edge: int
    p: float
    outcome: int
    fluctuation: float


@dataclass(frozen=True, eq=False)
class Snapshot:
    """Opinions and total weights captured at a sample time."""

    t: int
    x: np.ndarray
    g: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", frozen_array(self.x))
        object.__setattr__(self, "g", frozen_array(self.g))


class TrajectoryRecord(BaseModel):
    """A seeded trajectory: initial condition, snapshots and optional full step log."""

    graph: Graph
    u0: np.ndarray = Field(..., description="Initial weights on U")
    g0: np.ndarray = Field(..., description="Initial total weights")
    seed: int = Field(..., description="Seed of the trajectory stream")
    n_steps: int = Field(..., description="Number of conversations", ge=0)
    rng_name: str = Field(..., description="Bit generator name")
    snapshots: List[Snapshot] = Field(default_factory=list)
    steps: Optional[List[StepRecord]] = Field(None, description="Full step log, if recorded")

    class Config:
        """Pydantic config."""
        frozen = True
        arbitrary_types_allowed = True

    @field_validator("u0", "g0", mode="before")
    @classmethod
    def _freeze(cls, value: Any) -> np.ndarray:
        return frozen_array(value)

    @model_validator(mode="after")
    def _increasing_snapshots(self) -> "TrajectoryRecord":
        times = [snap.t for snap in self.snapshots]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("snapshot times must be strictly increasing")
        return self

    @property
    def sample_times(self) -> list[int]:
        """Return the snapshot times."""
        return [snap.t for snap in self.snapshots]
