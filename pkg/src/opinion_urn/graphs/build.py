"""Graph construction and validation."""

import logging
from typing import Iterable, List, Tuple

import networkx as nx

from ..errors import (
    Disconnected,
    DuplicateEdge,
    EmptyVertexSet,
    GraphError,
    SelfLoop,
    TooSmall,
    VertexOutOfRange,
)
from ..models import Graph

logger = logging.getLogger(__name__)


def build_graph(n: int, edge_pairs: Iterable[Tuple[int, int]]) -> Graph:
    """Validate an edge list and build a Graph.

    Edges are canonicalised to ``(min, max)`` and keep their input order as
    their index.

    Args:
        n: Number of vertices, labelled 0..n-1.
        edge_pairs: Unordered vertex pairs.

    Returns:
        Validated, immutable Graph.

    Raises:
        EmptyVertexSet: If ``n`` < 1.
        VertexOutOfRange: If a pair references a vertex outside [0, n).
        SelfLoop: If a pair joins a vertex to itself.
        DuplicateEdge: If an unordered pair appears twice.
        GraphError: If a pair does not name exactly two integer vertices.
        Disconnected: If some vertex is unreachable from vertex 0.
        TooSmall: If the graph has no edges.
    """
    if n < 1:
        raise EmptyVertexSet(f"graph needs at least one vertex, got n={n}")

    edges: List[Tuple[int, int]] = []
    seen: dict[Tuple[int, int], int] = {}
    incidence: List[List[int]] = [[] for _ in range(n)]

    for position, pair in enumerate(edge_pairs):
        try:
            i, j = (int(v) for v in pair)
        except (TypeError, ValueError):
            raise GraphError(f"edge #{position} {pair!r} must be a pair of integer vertices")
        for vertex in (i, j):
            if not 0 <= vertex < n:
                raise VertexOutOfRange(
                    f"edge #{position} ({i}, {j}): vertex {vertex} outside [0, {n})"
                )
        if i == j:
            raise SelfLoop(f"edge #{position} ({i}, {j}) is a self-loop at vertex {i}")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise DuplicateEdge(
                f"edge #{position} ({i}, {j}) duplicates edge #{seen[key]} {key}"
            )
        seen[key] = len(edges)
        incidence[key[0]].append(len(edges))
        incidence[key[1]].append(len(edges))
        edges.append(key)

    if not edges:
        raise TooSmall(f"graph on {n} vertex(es) has |E| = 0; at least one edge is needed")

    unreachable = _unreachable_vertices(n, edges)
    if unreachable:
        raise Disconnected(
            f"vertex {unreachable[0]} is unreachable from vertex 0 "
            f"({len(unreachable)} unreachable vertices)"
        )

    graph = Graph(
        n_vertices=n,
        edges=tuple(edges),
        degrees=tuple(len(inc) for inc in incidence),
        incidence=tuple(tuple(inc) for inc in incidence),
    )
    logger.debug(f"Built graph with {n} vertices and {len(edges)} edges")
    return graph


def _unreachable_vertices(n: int, edges: List[Tuple[int, int]]) -> List[int]:
    traversal = nx.Graph()
    traversal.add_nodes_from(range(n))
    traversal.add_edges_from(edges)
    # BFS from vertex 0
    reached = nx.node_connected_component(traversal, 0)
    return [vertex for vertex in range(n) if vertex not in reached]
