"""Seeded random streams.

Every trajectory owns a ``numpy.random.Generator`` over PCG64. Trajectory ``i``
of a run with base seed ``s`` is seeded from
``SeedSequence(entropy=s, spawn_key=(i,))``, the same state as child ``i`` of
``SeedSequence(s).spawn(...)``, so its stream does not depend on which other
trajectories exist.

Each urn step consumes two doubles in order: the edge uniform, then the
conversation uniform.
"""

import numpy as np

RNG_NAME = "numpy.PCG64"
DRAW_BLOCK = 4096


def make_rng(seed: int) -> np.random.Generator:
    """Return the generator for a 64-bit seed."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))


def trajectory_rng(base_seed: int, index: int) -> np.random.Generator:
    """Return the independent generator of trajectory ``index``."""
    sequence = np.random.SeedSequence(entropy=int(base_seed), spawn_key=(int(index),))
    return np.random.Generator(np.random.PCG64(sequence))


def trajectory_seed(base_seed: int, index: int) -> int:
    """Return a 64-bit integer identifying trajectory ``index`` (for metadata)."""
    sequence = np.random.SeedSequence(entropy=int(base_seed), spawn_key=(int(index),))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def edge_from_uniform(r: float, n_edges: int) -> int:
    """Map a uniform double in [0, 1) to an edge index."""
    return min(int(r * n_edges), n_edges - 1)


def edges_from_uniforms(r: np.ndarray, n_edges: int) -> np.ndarray:
    """Vectorised ``edge_from_uniform``."""
    return np.minimum((r * n_edges).astype(np.int64), n_edges - 1)
