"""Graph data model."""

from typing import Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator


class Graph(BaseModel):
    """Immutable simple connected undirected graph.

    Instances are produced by ``opinion_urn.graphs.build_graph``, which performs
    the simplicity and connectivity checks. The model itself only verifies that
    the derived ``degrees`` and ``incidence`` agree with ``edges``.
    """

    n_vertices: int = Field(..., description="Number of vertices", ge=1)
    edges: Tuple[Tuple[int, int], ...] = Field(
        ..., description="Canonical (min, max) vertex pairs, indexed by position"
    )
    degrees: Tuple[int, ...] = Field(..., description="Per-vertex degree d_i")
    incidence: Tuple[Tuple[int, ...], ...] = Field(
        ..., description="Per-vertex incident edge indices"
    )

    class Config:
        """Pydantic config."""
        frozen = True

    @model_validator(mode="after")
    def _check_derived(self) -> "Graph":
        if len(self.degrees) != self.n_vertices or len(self.incidence) != self.n_vertices:
            raise ValueError("degrees and incidence must have one entry per vertex")
        if sum(self.degrees) != 2 * len(self.edges):
            raise ValueError(
                f"handshake violated: sum of degrees {sum(self.degrees)} "
                f"!= 2|E| = {2 * len(self.edges)}"
            )
        for vertex, incident in enumerate(self.incidence):
            if len(incident) != self.degrees[vertex]:
                raise ValueError(f"vertex {vertex}: incidence list does not match degree")
            for edge in incident:
                if vertex not in self.edges[edge]:
                    raise ValueError(f"vertex {vertex}: edge {edge} is not incident")
        return self

    @property
    def n_edges(self) -> int:
        """Return |E|."""
        return len(self.edges)

    def endpoints(self) -> tuple[np.ndarray, np.ndarray]:
        """Return the edge endpoints as two integer arrays (i, j)."""
        pairs = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        return pairs[:, 0].copy(), pairs[:, 1].copy()

    def degree_vector(self) -> np.ndarray:
        """Return degrees as a float array."""
        return np.asarray(self.degrees, dtype=np.float64)

    def neighbors(self, vertex: int) -> list[int]:
        """Return the neighbours of ``vertex`` in incidence order."""
        result: list[int] = []
        for edge in self.incidence[vertex]:
            i, j = self.edges[edge]
            result.append(j if i == vertex else i)
        return result
