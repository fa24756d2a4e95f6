"""Monte Carlo ensembles, power-law fits and probabilistic checks."""

from .checks import (
    convergence_report,
    hoeffding_bound,
    hoeffding_check,
    polya_equivalence,
    reference_urn_paths,
)
from .fit import conjectured_exponent, fit_power_law, fit_power_law_series
from .grid import default_sample_times
from .runner import run_ensemble

__all__ = [
    "default_sample_times",
    "run_ensemble",
    "conjectured_exponent",
    "fit_power_law",
    "fit_power_law_series",
    "hoeffding_bound",
    "hoeffding_check",
    "reference_urn_paths",
    "polya_equivalence",
    "convergence_report",
]
