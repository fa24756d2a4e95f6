"""Standard graph generators."""

import logging

import networkx as nx
import numpy as np

from ..errors import ConnectivityRetryExhausted, DomainError, TooSmall
from ..models import Graph
from .build import build_graph

logger = logging.getLogger(__name__)

MAX_CONNECTIVITY_ATTEMPTS = 1000


def path_graph(n: int) -> Graph:
    """Path (interval graph) on n vertices: i ~ j iff |i - j| = 1.

    ``path_graph(5)`` is the interval graph I_5 with vertices relabelled 0..4.
    """
    if n < 2:
        raise TooSmall(f"path graph needs n >= 2, got n={n}")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    """Cycle on n vertices."""
    if n < 3:
        raise TooSmall(f"cycle graph needs n >= 3, got n={n}")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    """Complete graph K_n."""
    if n < 2:
        raise TooSmall(f"complete graph needs n >= 2, got n={n}")
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(n: int) -> Graph:
    """Star on n vertices with centre 0."""
    if n < 2:
        raise TooSmall(f"star graph needs n >= 2, got n={n}")
    return build_graph(n, [(0, j) for j in range(1, n)])


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """Connected G(n, p) sample.

    Attempt ``k`` samples ``networkx.gnp_random_graph`` with seed
    ``[seed, k]`` mixed through ``numpy.random.SeedSequence``, so the result is
    a pure function of ``(n, p, seed)``.

    Raises:
        TooSmall: If n < 2.
        DomainError: If p is outside [0, 1].
        ConnectivityRetryExhausted: If no connected sample appears within
            ``MAX_CONNECTIVITY_ATTEMPTS`` attempts.
    """
    if n < 2:
        raise TooSmall(f"erdos_renyi needs n >= 2, got n={n}")
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"erdos_renyi edge probability must lie in [0, 1], got p={p}")

    for attempt in range(MAX_CONNECTIVITY_ATTEMPTS):
        attempt_seed = int(np.random.SeedSequence([seed, attempt]).generate_state(1)[0])
        sample = nx.gnp_random_graph(n, p, seed=attempt_seed)
        if nx.is_connected(sample):
            logger.debug(f"G({n}, {p}) seed={seed}: connected on attempt {attempt + 1}")
            edges = sorted((min(i, j), max(i, j)) for i, j in sample.edges())
            return build_graph(n, edges)

    raise ConnectivityRetryExhausted(
        f"G({n}, {p}) seed={seed}: no connected sample in {MAX_CONNECTIVITY_ATTEMPTS} attempts"
    )
