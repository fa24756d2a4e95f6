"""Graph JSON format and command-line shorthand."""

import hashlib
import json
from pathlib import Path
from typing import Any, Callable, Dict

from ..errors import GraphError, GraphSpecError
from ..models import Graph
from .build import build_graph
from .generators import complete_graph, cycle_graph, erdos_renyi, path_graph, star_graph


_SIZED_GENERATORS: Dict[str, Callable[[int], Graph]] = {
    "path": path_graph,
    "cycle": cycle_graph,
    "complete": complete_graph,
    "star": star_graph,
}


def graph_to_json(graph: Graph) -> Dict[str, Any]:
    """Return the ``{"n": ..., "edges": [[i, j], ...]}`` form of a graph."""
    return {"n": graph.n_vertices, "edges": [[i, j] for i, j in graph.edges]}


def graph_from_json(data: Dict[str, Any]) -> Graph:
    """Build a graph from its JSON form.

    Raises:
        GraphSpecError: If keys are missing or unexpected.
        GraphError: If the edge list is invalid.
    """
    if not isinstance(data, dict):
        raise GraphSpecError("graph JSON must be an object with keys 'n' and 'edges'")
    unknown = set(data) - {"n", "edges"}
    if unknown:
        raise GraphSpecError(f"unknown graph JSON keys: {', '.join(sorted(unknown))}")
    if "n" not in data or "edges" not in data:
        raise GraphSpecError("graph JSON requires keys 'n' and 'edges'")
    try:
        pairs = [(int(edge[0]), int(edge[1])) for edge in data["edges"] if len(edge) == 2]
    except (TypeError, ValueError, IndexError) as e:
        raise GraphSpecError(f"graph JSON 'edges' must be a list of [i, j] pairs: {e}")
    if len(pairs) != len(data["edges"]):
        raise GraphSpecError("graph JSON 'edges' entries must have exactly two vertices")
    return build_graph(int(data["n"]), pairs)


def load_graph(path: Path) -> Graph:
    """Load a graph JSON file."""
    with open(path, "r") as f:
        data = json.load(f)
    return graph_from_json(data)


def save_graph(graph: Graph, path: Path) -> None:
    """Write a graph JSON file."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(graph_to_json(graph), f, indent=2)


def graph_hash(graph: Graph) -> str:
    """SHA-256 of the canonical graph JSON."""
    canonical = json.dumps(graph_to_json(graph), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def graph_from_spec(text: str) -> Graph:
    """Resolve a graph source string.

    Accepts ``path:5``, ``cycle:8``, ``complete:4``, ``star:6``,
    ``gnp:20:0.3:seed`` or a path to a graph JSON file.

    Raises:
        GraphSpecError: If the shorthand is malformed or the file is missing.
    """
    name, _, rest = text.partition(":")
    params = rest.split(":") if rest else []

    try:
        if name in _SIZED_GENERATORS:
            if len(params) != 1:
                raise GraphSpecError(f"'{text}': expected {name}:<n>")
            return _SIZED_GENERATORS[name](int(params[0]))
        if name == "gnp":
            if len(params) != 3:
                raise GraphSpecError(f"'{text}': expected gnp:<n>:<p>:<seed>")
            return erdos_renyi(int(params[0]), float(params[1]), int(params[2]))
    except ValueError as e:
        if isinstance(e, GraphError):
            raise
        raise GraphSpecError(f"'{text}': bad parameter ({e})")

    candidate = Path(text)
    if candidate.is_file():
        try:
            return load_graph(candidate)
        except json.JSONDecodeError as e:
            raise GraphSpecError(f"{candidate}: invalid JSON ({e})")
    raise GraphSpecError(
        f"'{text}' is neither a graph shorthand (path:n, cycle:n, complete:n, star:n, "
        "gnp:n:p:seed) nor an existing graph JSON file"
    )
