"""Power-law fits of the disagreement decay."""

import logging
from typing import Sequence, Tuple

import numpy as np

from ..errors import DomainError, InsufficientData, NonpositiveValues
from ..models import EnsembleStats, PowerLawFit

logger = logging.getLogger(__name__)

MIN_FIT_POINTS = 5
DEFAULT_FIT_WINDOW = (100, 10_000)


def conjectured_exponent(gap: float) -> float:
    """Conjectured decay exponent of E‖z_t‖²: -2·gap below 1/2, -1 above."""
    if not 0.0 < gap < 1.0:
        raise DomainError(f"spectral gap must lie in (0, 1), got {gap}")
    return -2.0 * gap if gap <= 0.5 else -1.0


def fit_power_law_series(
    times: Sequence[float],
    values: Sequence[float],
    window: Tuple[float, float] = DEFAULT_FIT_WINDOW,
) -> PowerLawFit:
    """Fit values ≈ amplitude · t^exponent over t_min <= t <= t_max.

    Ordinary least squares on (log t, log value).

    Raises:
        InsufficientData: Fewer than five sample times fall in the window.
        NonpositiveValues: A value in the window is <= 0.
    """
    t = np.asarray(times, dtype=np.float64)
    y = np.asarray(values, dtype=np.float64)
    if t.shape != y.shape:
        raise DomainError(f"times and values differ in shape: {t.shape} vs {y.shape}")
    t_min, t_max = window
    mask = (t >= t_min) & (t <= t_max) & (t > 0)
    n_points = int(mask.sum())
    if n_points < MIN_FIT_POINTS:
        raise InsufficientData(
            f"{n_points} sample times in window [{t_min}, {t_max}], need {MIN_FIT_POINTS}"
        )
    t, y = t[mask], y[mask]
    bad = np.flatnonzero(y <= 0)
    if bad.size:
        raise NonpositiveValues(f"value {y[bad[0]]} at t = {t[bad[0]]:g} is not positive")

    log_t, log_y = np.log(t), np.log(y)
    slope, intercept = np.polyfit(log_t, log_y, 1)
    residual = log_y - (slope * log_t + intercept)
    ss_res = float(np.sum(residual ** 2))
    ss_tot = float(np.sum((log_y - log_y.mean()) ** 2))
    r_squared = 1.0 if ss_tot == 0.0 else min(max(1.0 - ss_res / ss_tot, 0.0), 1.0)

    fit = PowerLawFit(
        exponent=float(slope),
        amplitude=float(np.exp(intercept)),
        r_squared=r_squared,
        window=(int(t_min), int(t_max)),
        n_points=n_points,
    )
    logger.debug(f"Power-law fit: exponent {fit.exponent:.6f}, r^2 {fit.r_squared:.4f}")
    return fit


def fit_power_law(
    stats: EnsembleStats,
    window: Tuple[float, float] = DEFAULT_FIT_WINDOW,
) -> PowerLawFit:
    """Fit the ensemble mean of ‖z_t‖² to a power law over ``window``."""
    return fit_power_law_series(stats.sample_times, stats.mean_z_sq, window)
