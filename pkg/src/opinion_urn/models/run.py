"""Run configuration shared by the CLI subcommands."""

from pathlib import Path
from typing import List, Optional, Tuple

import yaml
from pydantic import BaseModel, Field, field_validator, model_validator

from ..errors import DimensionMismatch, DomainError


class RunConfig(BaseModel):
    """Validated inputs of one CLI run.

    Values come from an optional YAML file and are overridden by flags.
    Unknown keys are rejected.
    """

    graph: str = Field(default="path:5", description="Graph shorthand or graph JSON path")
    x0: Optional[List[float]] = Field(None, description="Initial opinions (u0 = x0 * g0)")
    u0: Optional[List[float]] = Field(None, description="Initial weights on U")
    g0: List[float] = Field(
        default_factory=lambda: [1.0], description="Total weights; one value broadcasts"
    )
    steps: int = Field(default=10_000, description="Conversations per trajectory", ge=0)
    trajectories: int = Field(default=1000, description="Ensemble size", ge=1)
    seed: int = Field(default=0, description="Base seed", ge=0, lt=2**64)
    samples: Optional[List[int]] = Field(None, description="Sample times (default: log grid)")
    fit_window: Tuple[int, int] = Field(default=(100, 10_000), description="Fit range of t")
    out: Optional[Path] = Field(None, description="Output path")

    class Config:
        """Pydantic config."""
        frozen = False
        extra = "forbid"

    @field_validator("x0")
    @classmethod
    def _opinions_in_unit_interval(cls, value: Optional[List[float]]) -> Optional[List[float]]:
        if value is not None:
            for i, x in enumerate(value):
                if not 0.0 <= x <= 1.0:
                    raise ValueError(f"x0[{i}] = {x} must lie in [0, 1]")
        return value

    @field_validator("g0")
    @classmethod
    def _positive_weights(cls, value: List[float]) -> List[float]:
        if not value:
            raise ValueError("g0 needs at least one value")
        for i, g in enumerate(value):
            if g <= 0:
                raise ValueError(f"g0[{i}] = {g} must be > 0")
        return value

    @model_validator(mode="after")
    def _one_initial_condition(self) -> "RunConfig":
        if self.x0 is not None and self.u0 is not None:
            raise ValueError("give either x0 or u0, not both")
        low, high = self.fit_window
        if not 0 < low < high:
            raise ValueError(f"fit_window must satisfy 0 < t_min < t_max, got {self.fit_window}")
        return self

    def initial_weights(self, n_vertices: int) -> Tuple[List[float], List[float]]:
        """Resolve (u0, g0) for a graph with ``n_vertices`` vertices.

        A single g0 value broadcasts to every vertex; x0 converts to u0 = x0 · g0.

        Raises:
            DomainError: If neither x0 nor u0 was given.
            DimensionMismatch: If a vector has the wrong length.
        """
        g0 = self.g0 * n_vertices if len(self.g0) == 1 else list(self.g0)
        if len(g0) != n_vertices:
            raise DimensionMismatch(f"g0 has {len(g0)} entries, graph has {n_vertices} vertices")
        if self.x0 is not None:
            if len(self.x0) != n_vertices:
                raise DimensionMismatch(
                    f"x0 has {len(self.x0)} entries, graph has {n_vertices} vertices"
                )
            return [x * g for x, g in zip(self.x0, g0)], g0
        if self.u0 is not None:
            if len(self.u0) != n_vertices:
                raise DimensionMismatch(
                    f"u0 has {len(self.u0)} entries, graph has {n_vertices} vertices"
                )
            return list(self.u0), g0
        raise DomainError("initial condition missing: set x0 or u0")

    @classmethod
    def from_yaml(cls, path: Path) -> "RunConfig":
        """Load a run configuration from a YAML file."""
        with open(path, "r") as f:
            data = yaml.safe_load(f) or {}
        return cls(**data)

    def to_yaml(self, path: Path) -> None:
        """Save the run configuration to a YAML file."""
        with open(path, "w") as f:
            yaml.safe_dump(self.model_dump(mode="json"), f, default_flow_style=False)
