"""Graph construction, generators and I/O."""

from .build import build_graph
from .generators import complete_graph, cycle_graph, erdos_renyi, path_graph, star_graph
from .io import (
    graph_from_json,
    graph_from_spec,
    graph_hash,
    graph_to_json,
    load_graph,
    save_graph,
)

__all__ = [
    "build_graph",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "star_graph",
    "erdos_renyi",
    "graph_from_json",
    "graph_from_spec",
    "graph_hash",
    "graph_to_json",
    "load_graph",
    "save_graph",
]
