"""Sample-time grids."""

from typing import List

import numpy as np

POINTS_PER_DECADE = 20


def default_sample_times(n_steps: int, per_decade: int = POINTS_PER_DECADE) -> List[int]:
    """Log-spaced sample times in [0, n_steps].

    Contains 0, rounded powers 10^(k/per_decade) up to ``n_steps`` and the
    dyadic checkpoints n_steps, n_steps/2, n_steps/4 and n_steps/8.
    """
    if n_steps <= 0:
        return [0]
    n_points = int(np.floor(np.log10(n_steps) * per_decade)) + 1
    grid = np.rint(10.0 ** (np.arange(n_points) / per_decade)).astype(np.int64)
    times = {0, n_steps}
    times.update(int(t) for t in grid if 0 < t <= n_steps)
    times.update(n_steps // 2**k for k in (1, 2, 3) if n_steps // 2**k > 0)
    return sorted(times)
