"""Spectral analysis of the influence matrix and the consensus decomposition."""

from .decomposition import decompose_consensus
from .gautschi import GautschiBounds, gautschi_bounds
from .influence import (
    a_k_matrix,
    consensus_coordinate,
    delta_matrix,
    disagreement,
    eigenbasis,
    expected_damped_diffusion,
    influence_matrix,
    spectral_gap,
    symmetrize,
)

__all__ = [
    "influence_matrix",
    "symmetrize",
    "eigenbasis",
    "spectral_gap",
    "a_k_matrix",
    "expected_damped_diffusion",
    "delta_matrix",
    "consensus_coordinate",
    "disagreement",
    "decompose_consensus",
    "GautschiBounds",
    "gautschi_bounds",
]
