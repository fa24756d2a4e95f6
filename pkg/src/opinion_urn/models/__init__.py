"""Data models for the opinion urn."""

from .graph import Graph
from .state import Snapshot, StepRecord, TrajectoryRecord, UrnState
from .spectrum import ConsensusDecomposition, InfluenceSpectrum
from .ensemble import EnsembleConfig, EnsembleStats, PowerLawFit
from .reports import (
    CheckResult,
    ConvergenceReport,
    HoeffdingReport,
    HoeffdingRow,
    PolyaReport,
    VerificationReport,
)
from .run import RunConfig

__all__ = [
    "Graph",
    "UrnState",
    "StepRecord",
    "Snapshot",
    "TrajectoryRecord",
    "InfluenceSpectrum",
    "ConsensusDecomposition",
    "EnsembleConfig",
    "EnsembleStats",
    "PowerLawFit",
    "CheckResult",
    "ConvergenceReport",
    "HoeffdingReport",
    "HoeffdingRow",
    "PolyaReport",
    "VerificationReport",
    "RunConfig",
]
