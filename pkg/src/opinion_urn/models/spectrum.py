"""Spectral data of the influence matrix and the consensus decomposition."""

from typing import Any

import numpy as np
from pydantic import BaseModel, Field, field_validator

from .state import frozen_array


class InfluenceSpectrum(BaseModel):
    """Eigenstructure of an influence matrix L = P D P⁻¹.

    The first column of ``P`` is the all-ones vector and ``D[0, 0] = 0``;
    ``p`` (the first row of ``P_inv``) is the consensus left-vector with
    p·L = 0 and p·1 = 1.
    """

    L: np.ndarray = Field(..., description="Influence matrix")
    P: np.ndarray = Field(..., description="Eigenbasis, first column all-ones")
    P_inv: np.ndarray = Field(..., description="Inverse of P")
    D: np.ndarray = Field(..., description="Diagonal eigenvalue matrix")
    gap: float = Field(..., description="Spectral gap λ")
    p: np.ndarray = Field(..., description="Consensus left-vector")

    class Config:
        """Pydantic config."""
        frozen = True
        arbitrary_types_allowed = True

    @field_validator("L", "P", "P_inv", "D", "p", mode="before")
    @classmethod
    def _freeze(cls, value: Any) -> np.ndarray:
        return frozen_array(value)

    @property
    def eigenvalues(self) -> np.ndarray:
        """Diagonal of D."""
        return np.diag(self.D).copy()


class ConsensusDecomposition(BaseModel):
    """a_t = a_0 + m_t + s_t along one trajectory.

    ``delta_norms[k]`` is the operator norm of Δ_t at ``times[k]``, the
    deviation of the damped expected diffusion from L/(t+1).
    """

    times: np.ndarray
    a: np.ndarray
    m: np.ndarray
    s: np.ndarray
    delta_norms: np.ndarray

    class Config:
        """Pydantic config."""
        frozen = True
        arbitrary_types_allowed = True

    @field_validator("times", mode="before")
    @classmethod
    def _freeze_times(cls, value: Any) -> np.ndarray:
        return frozen_array(value, dtype=np.int64)

    @field_validator("a", "m", "s", "delta_norms", mode="before")
    @classmethod
    def _freeze(cls, value: Any) -> np.ndarray:
        return frozen_array(value)

    def identity_defect(self) -> float:
        """Largest |a_t - a_0 - m_t - s_t| over recorded times."""
        if self.a.size == 0:
            return 0.0
        return float(np.max(np.abs(self.a - self.a[0] - self.m - self.s)))
