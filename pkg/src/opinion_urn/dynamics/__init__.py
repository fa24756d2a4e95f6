"""Urn dynamics: transitions, trajectories and the stochastic heat equation."""

from .heat import (
    diffusion_matrix,
    lambda_matrix,
    lambda_window_product,
    noise_vector,
    she_residual,
)
from .kernel import BatchResult, simulate_batch
from .rng import RNG_NAME, make_rng, trajectory_rng, trajectory_seed
from .urn import (
    apply_step,
    edge_endpoints,
    init_state,
    normalize_sample_times,
    pooled_opinion,
    replay_states,
    run_trajectory,
    step,
)

__all__ = [
    # Transitions
    "init_state",
    "pooled_opinion",
    "apply_step",
    "step",
    "edge_endpoints",
    "normalize_sample_times",
    "run_trajectory",
    "replay_states",
    # Heat equation
    "diffusion_matrix",
    "lambda_matrix",
    "noise_vector",
    "she_residual",
    "lambda_window_product",
    # Batched kernel
    "BatchResult",
    "simulate_batch",
    # Randomness
    "RNG_NAME",
    "make_rng",
    "trajectory_rng",
    "trajectory_seed",
]
