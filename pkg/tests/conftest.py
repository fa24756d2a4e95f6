"""Shared fixtures."""

import numpy as np
import pytest

from opinion_urn.graphs import complete_graph, erdos_renyi, path_graph
from opinion_urn.models import Graph


@pytest.fixture
def path5() -> Graph:
    return path_graph(5)


@pytest.fixture
def k2() -> Graph:
    return complete_graph(2)


@pytest.fixture
def gnp10() -> Graph:
    return erdos_renyi(10, 0.5, 0)


@pytest.fixture
def split_start() -> tuple[np.ndarray, np.ndarray]:
    """Two agreeing vertices at one end of the path, the rest opposed."""
    return np.array([1.0, 1.0, 0.0, 0.0, 0.0]), np.ones(5)


@pytest.fixture
def mixed_start(path5: Graph) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(3)
    g0 = rng.uniform(0.5, 3.0, path5.n_vertices)
    return rng.uniform(0.0, 1.0, path5.n_vertices) * g0, g0
