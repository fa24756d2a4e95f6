"""Power-law sandwich for products of (1 - λ/k)."""

from typing import NamedTuple

import numpy as np

from ..errors import DomainError


class GautschiBounds(NamedTuple):
    """lower <= product <= upper."""

    lower: float
    product: float
    upper: float


def gautschi_bounds(j: int, t: int, lam: float) -> GautschiBounds:
    """Bound Π_{k=j}^{t} (1 - lam/k) between ((j-1)/(t+1))^lam and (j/t)^lam.

    Raises:
        DomainError: If j < 1, t < j or lam is outside (0, 1).
    """
    if j < 1:
        raise DomainError(f"j must be >= 1, got {j}")
    if t < j:
        raise DomainError(f"t must be >= j, got j={j}, t={t}")
    if not 0.0 < lam < 1.0:
        raise DomainError(f"lam must lie in (0, 1), got {lam}")

    k = np.arange(j, t + 1, dtype=np.float64)
    product = float(np.prod(1.0 - lam / k))
    lower = ((j - 1) / (t + 1)) ** lam
    upper = (j / t) ** lam
    return GautschiBounds(lower=float(lower), product=product, upper=float(upper))
