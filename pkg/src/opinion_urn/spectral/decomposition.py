"""Pathwise split of the consensus coordinate into martingale and drift parts."""

import logging
from typing import List

import numpy as np

from ..dynamics import diffusion_matrix, noise_vector, replay_states
from ..errors import MissingStepRecords
from ..linalg import hadamard_left, operator_norm
from ..models import ConsensusDecomposition, InfluenceSpectrum, TrajectoryRecord
from .influence import delta_matrix, expected_damped_diffusion

logger = logging.getLogger(__name__)


def decompose_consensus(
    trajectory: TrajectoryRecord,
    spectrum: InfluenceSpectrum,
    with_delta_norms: bool = True,
) -> ConsensusDecomposition:
    """Split a_t = p·x_t into a_0 + m_t + s_t at every step.

    Each step contributes

        m:  p · [(γ_{j+1}∘L_j - E_j[γ_{j+1}∘L_j]) x_j + γ_{j+1}∘W_{j+1}]
        s:  p · Δ_j x_j

    and, since p·L = 0, the two add up to a_{j+1} - a_j.

    Args:
        trajectory: Trajectory recorded with ``record_steps=True``.
        spectrum: Spectrum of the trajectory's graph.
        with_delta_norms: Also record ||Δ_t|| at every step (one power
            iteration per step); when False ``delta_norms`` is empty.

    Raises:
        MissingStepRecords: If the trajectory was run without step records.
    """
    if trajectory.steps is None:
        raise MissingStepRecords(
            f"trajectory seed={trajectory.seed} has no step records to decompose"
        )
    p = spectrum.p
    L = spectrum.L

    states = replay_states(trajectory)
    pre = next(states)
    times: List[int] = [0]
    a: List[float] = [float(p @ pre.x)]
    m: List[float] = [0.0]
    s: List[float] = [0.0]
    delta_norms: List[float] = []

    for record, post in zip(trajectory.steps, states):
        expected = expected_damped_diffusion(pre)
        delta = expected - L / (pre.t + 1)
        realized = hadamard_left(post.gamma, diffusion_matrix(pre, record.edge))
        noise = post.gamma * noise_vector(pre, record)
        martingale = p @ ((realized - expected) @ pre.x) + p @ noise
        drift = p @ (delta @ pre.x)

        if with_delta_norms:
            delta_norms.append(operator_norm(delta))
        times.append(post.t)
        a.append(float(p @ post.x))
        m.append(m[-1] + float(martingale))
        s.append(s[-1] + float(drift))
        pre = post

    if with_delta_norms:
        delta_norms.append(operator_norm(delta_matrix(pre, influence=L)))
    logger.debug(f"Decomposed trajectory seed={trajectory.seed} over {len(times) - 1} steps")
    return ConsensusDecomposition(
        times=np.asarray(times, dtype=np.int64),
        a=np.asarray(a),
        m=np.asarray(m),
        s=np.asarray(s),
        delta_norms=np.asarray(delta_norms),
    )
