"""Invariant suite run by ``opinion-urn verify``.

Every check is deterministic (fixed seeds) and returns a CheckResult; an
exception inside a check marks it failed instead of aborting the suite.
"""

import logging
import math
import time
from typing import Callable, List, NamedTuple, Tuple

import numpy as np

from .dynamics import (
    diffusion_matrix,
    lambda_matrix,
    lambda_window_product,
    make_rng,
    replay_states,
    run_trajectory,
    she_residual,
)
from .ensemble import hoeffding_check, polya_equivalence
from .graphs import complete_graph, erdos_renyi, graph_from_spec, path_graph
from .linalg import hadamard_left, hadamard_right, jacobi_eigs, operator_norm, row_norm_bounds
from .models import CheckResult, Graph, TrajectoryRecord, VerificationReport
from .spectral import a_k_matrix, decompose_consensus, eigenbasis, gautschi_bounds, symmetrize

logger = logging.getLogger(__name__)

SUITE_SEED = 20240
PATH5_GAP = 0.185667
LAMBDA_TRAJECTORY_STEPS = 2000
MAX_WINDOW = 1000


class SuiteSize(NamedTuple):
    """Workload of one verification run."""

    she_steps: int
    lambda_windows: int
    decomposition_trajectories: int
    decomposition_steps: int
    polya_trials: int
    polya_steps: int
    ks_threshold: float
    hoeffding_steps: int
    hoeffding_trials: int


FULL = SuiteSize(100_000, 500, 100, 1000, 2000, 5000, 0.05, 10_000, 2000)
QUICK = SuiteSize(10_000, 50, 40, 200, 400, 200, 0.15, 1000, 300)


def _positive_initial_state(graph: Graph, seed: int) -> Tuple[np.ndarray, np.ndarray]:
    rng = make_rng(seed)
    g0 = rng.uniform(0.5, 3.0, graph.n_vertices)
    u0 = rng.uniform(0.0, 1.0, graph.n_vertices) * g0
    return u0, g0


def check_heat_equation(size: SuiteSize) -> CheckResult:
    """The stochastic heat equation holds at every step on a few graphs."""
    graphs = {
        "K2": complete_graph(2),
        "P3": path_graph(3),
        "I5": path_graph(5),
        "K4": complete_graph(4),
        "G(10,0.5)": erdos_renyi(10, 0.5, 0),
    }
    worst = 0.0
    for k, (name, graph) in enumerate(graphs.items()):
        u0, g0 = _positive_initial_state(graph, SUITE_SEED + k)
        trajectory = run_trajectory(
            graph, u0, g0, size.she_steps, SUITE_SEED + k, record_steps=True
        )
        assert trajectory.steps is not None
        states = replay_states(trajectory)
        pre = next(states)
        for record, post in zip(trajectory.steps, states):
            worst = max(worst, she_residual(pre, record, post))
            pre = post
        logger.debug(f"Heat equation on {name}: worst residual so far {worst:.3e}")
    return CheckResult(
        name="heat_equation",
        passed=worst < 1e-12,
        detail=f"max residual {worst:.3e} over {size.she_steps} steps on {len(graphs)} graphs",
    )


def check_hadamard(size: SuiteSize) -> CheckResult:
    """Submultiplicativity and associativity of the row/column Hadamard products."""
    rng = make_rng(SUITE_SEED)
    worst_norm = 0.0
    worst_assoc = 0.0
    for _ in range(200):
        n, m = (int(v) for v in rng.integers(1, 9, size=2))
        A = rng.standard_normal((n, m))
        left = rng.standard_normal(n)
        right = rng.standard_normal(m)
        scale = operator_norm(A)
        for product, factor in (
            (hadamard_left(left, A), float(np.linalg.norm(left))),
            (hadamard_right(A, right), float(np.linalg.norm(right))),
        ):
            excess = (operator_norm(product) - scale * factor) / (1.0 + scale * factor)
            worst_norm = max(worst_norm, excess)
        A1 = rng.standard_normal((int(rng.integers(1, 9)), n))
        lhs = A1 @ hadamard_left(left, A)
        rhs = hadamard_right(A1, left) @ A
        defect = float(np.max(np.abs(lhs - rhs))) / (1.0 + float(np.max(np.abs(lhs))))
        worst_assoc = max(worst_assoc, defect)
    return CheckResult(
        name="hadamard_products",
        passed=worst_norm <= 1e-8 and worst_assoc <= 1e-12,
        detail=f"norm excess {worst_norm:.3e}, associativity defect {worst_assoc:.3e}",
    )


def check_gautschi(size: SuiteSize) -> CheckResult:
    """Gautschi sandwich over a sweep of (j, t, λ)."""
    violations = 0
    cases = 0
    for lam in (0.1, PATH5_GAP, 0.5, 0.9):
        for j in range(1, 51):
            for t in range(j, 201):
                bounds = gautschi_bounds(j, t, lam)
                cases += 1
                if not bounds.lower - 1e-12 <= bounds.product <= bounds.upper + 1e-12:
                    violations += 1
    return CheckResult(
        name="gautschi_bounds",
        passed=violations == 0,
        detail=f"{violations} violations in {cases} cases",
    )


def _one_step_matrices(
    graph: Graph, seed: int
) -> Tuple[TrajectoryRecord, List[np.ndarray], float]:
    """Realised Λ_t along one trajectory, with the worst row-sum/sign defect."""
    u0, g0 = _positive_initial_state(graph, seed)
    trajectory = run_trajectory(
        graph, u0, g0, LAMBDA_TRAJECTORY_STEPS, seed, record_steps=True
    )
    assert trajectory.steps is not None
    one_step: List[np.ndarray] = []
    states = replay_states(trajectory)
    pre = next(states)
    worst_row = 0.0
    for record, post in zip(trajectory.steps, states):
        Lam = lambda_matrix(post, diffusion_matrix(pre, record.edge))
        worst_row = max(worst_row, float(np.max(np.abs(Lam.sum(axis=1) - 1.0))))
        if np.any(Lam < 0):
            worst_row = math.inf
        one_step.append(Lam)
        pre = post
    return trajectory, one_step, worst_row


def check_lambda_products(size: SuiteSize) -> CheckResult:
    """Products of one-step matrices stay row-stochastic and below √|V| in norm.

    Windows (graph, start, length <= 1000) are drawn at random over a pool of
    recorded trajectories.
    """
    pool = [graph_from_spec(text) for text in ("complete:2", "path:3", "path:5", "complete:4")]
    pool.append(erdos_renyi(10, 0.5, SUITE_SEED))
    trajectories: List[TrajectoryRecord] = []
    matrices: List[List[np.ndarray]] = []
    worst_row = 0.0
    for k, graph in enumerate(pool):
        trajectory, one_step, defect = _one_step_matrices(graph, SUITE_SEED + k)
        trajectories.append(trajectory)
        matrices.append(one_step)
        worst_row = max(worst_row, defect)

    rng = make_rng(SUITE_SEED + 1)
    worst_excess = -math.inf
    for _ in range(size.lambda_windows):
        k = int(rng.integers(0, len(pool)))
        length = int(rng.integers(1, MAX_WINDOW + 1))
        start = int(rng.integers(0, LAMBDA_TRAJECTORY_STEPS - length + 1))
        product = np.eye(pool[k].n_vertices)
        for Lam in matrices[k][start:start + length]:
            product = Lam @ product
        excess = operator_norm(product) - math.sqrt(pool[k].n_vertices)
        worst_excess = max(worst_excess, excess)

    window = lambda_window_product(trajectories[2], 10, 25)
    expected = np.eye(pool[2].n_vertices)
    for Lam in matrices[2][10:35]:
        expected = Lam @ expected
    consistent = bool(np.allclose(window, expected, rtol=0.0, atol=1e-14))
    return CheckResult(
        name="lambda_products",
        passed=worst_row <= 1e-14 and worst_excess <= 1e-9 and consistent,
        detail=(
            f"max row-sum defect {worst_row:.3e}, max norm excess over √|V| "
            f"{worst_excess:.3e} in {size.lambda_windows} windows, "
            f"window product consistent: {consistent}"
        ),
    )


def check_row_norms(size: SuiteSize) -> CheckResult:
    """max row norm <= ‖A‖ <= √n · max row norm, and agreement with LAPACK."""
    rng = make_rng(SUITE_SEED + 2)
    failures = 0
    for _ in range(200):
        n = int(rng.integers(1, 12))
        A = rng.standard_normal((n, n))
        row, op = row_norm_bounds(A)
        reference = float(np.linalg.norm(A, 2))
        if not (row <= op * (1 + 1e-10) and op <= math.sqrt(n) * row * (1 + 1e-10)):
            failures += 1
        elif abs(op - reference) > 1e-8 * reference:
            failures += 1
    return CheckResult(
        name="row_norm_sandwich", passed=failures == 0, detail=f"{failures} failures"
    )


def check_eigenstructure(size: SuiteSize) -> CheckResult:
    """Influence spectra of random connected graphs."""
    rng = make_rng(SUITE_SEED + 3)
    problems: List[str] = []
    for instance in range(20):
        n = int(rng.integers(2, 31))
        graph = erdos_renyi(n, float(rng.uniform(0.3, 0.8)), SUITE_SEED + instance)
        spectrum = eigenbasis(graph)
        L, p = spectrum.L, spectrum.p
        mu = spectrum.eigenvalues
        scale = max(1.0, float(np.max(np.abs(L))))

        if np.max(np.abs(L.sum(axis=1))) > 1e-12:
            problems.append(f"#{instance}: row sums")
        if np.max(np.abs(spectrum.P @ spectrum.D @ spectrum.P_inv - L)) > 1e-9 * scale:
            problems.append(f"#{instance}: reconstruction")
        if np.sum(np.abs(mu) <= 1e-9 * scale) != 1:
            problems.append(f"#{instance}: zero eigenvalue not simple")

        degrees = graph.degree_vector()
        if np.max(np.abs(p - degrees ** 2 / np.sum(degrees ** 2))) > 1e-9:
            problems.append(f"#{instance}: p differs from d^2/sum(d^2)")
        _, _, vt = np.linalg.svd(L.T)
        null = vt[-1] / vt[-1].sum()
        if np.max(np.abs(null - p)) > 1e-8:
            problems.append(f"#{instance}: p differs from the numerical left null space")

        S = symmetrize(L, degrees)
        jacobi = np.sort(jacobi_eigs(S).eigenvalues)
        if np.max(np.abs(jacobi - np.linalg.eigvalsh(S))) > 1e-9:
            problems.append(f"#{instance}: Jacobi eigenvalues")

        nonzero = mu[1:]
        for k in range(1, 51):
            A = a_k_matrix(L, k)
            if np.min(A) < -1e-15 or np.max(np.abs(A.sum(axis=1) - 1.0)) > 1e-12:
                problems.append(f"#{instance}: A_{k} not row-stochastic")
                break
            if np.max(np.abs(1.0 + nonzero / k)) > 1.0 - spectrum.gap / k + 1e-12:
                problems.append(f"#{instance}: A_{k} spectrum exceeds 1 - gap/k")
                break
    return CheckResult(
        name="eigenstructure",
        passed=not problems,
        detail="; ".join(problems[:5]) if problems else "20 random graphs",
    )


def martingale_sample_times(n_steps: int) -> List[int]:
    """Decades and dyadic checkpoints in [1, n_steps]."""
    decades: List[int] = []
    t = 1
    while t <= n_steps:
        decades.append(t)
        t *= 10
    dyadic = [n_steps // 8, n_steps // 4, n_steps // 2, n_steps]
    return sorted({t for t in decades + dyadic if 1 <= t <= n_steps})


def check_decomposition(size: SuiteSize) -> CheckResult:
    """a_t = a_0 + m_t + s_t pathwise, and the m increments are centred.

    At each sample time the ensemble mean of m_t - m_{t-1} must lie within
    three standard errors of zero.
    """
    graph = path_graph(5)
    spectrum = eigenbasis(graph)
    u0 = np.array([1.0, 1.0, 0.0, 0.0, 0.0])
    g0 = np.ones(5)
    times = np.array(martingale_sample_times(size.decomposition_steps))
    worst = 0.0
    increments = np.empty((size.decomposition_trajectories, times.size))
    for k in range(size.decomposition_trajectories):
        trajectory = run_trajectory(
            graph, u0, g0, size.decomposition_steps, SUITE_SEED + k, record_steps=True
        )
        parts = decompose_consensus(trajectory, spectrum, with_delta_norms=False)
        worst = max(worst, parts.identity_defect())
        increments[k] = parts.m[times] - parts.m[times - 1]

    mean = increments.mean(axis=0)
    se = increments.std(axis=0, ddof=1) / math.sqrt(increments.shape[0])
    z = np.abs(mean) / np.where(se > 0, se, np.inf)
    off = [int(t) for t, bad in zip(times, np.abs(mean) > 3.0 * se + 1e-15) if bad]
    return CheckResult(
        name="consensus_decomposition",
        passed=worst < 1e-10 and not off,
        detail=(
            f"max identity defect {worst:.3e}; largest |mean m increment| / SE "
            f"{float(np.max(z)):.2f} over {times.size} sample times"
            + (f"; outside 3 SE at t = {off}" if off else "")
        ),
    )


def check_polya(size: SuiteSize) -> CheckResult:
    """Two-vertex model versus a single Pólya urn."""
    report = polya_equivalence(
        1.0, 2.0, size.polya_steps, size.polya_trials, SUITE_SEED, ks_threshold=size.ks_threshold
    )
    return CheckResult(
        name="polya_coupling",
        passed=report.passed,
        detail=f"paths identical; KS {report.ks_statistic:.4f} < {report.ks_threshold}",
    )


def check_hoeffding(size: SuiteSize) -> CheckResult:
    """Weight concentration on the five-vertex path."""
    report = hoeffding_check(path_graph(5), size.hoeffding_steps, size.hoeffding_trials, SUITE_SEED)
    worst = max(row.frequency - row.bound for row in report.rows)
    return CheckResult(
        name="hoeffding",
        passed=report.passed,
        detail=f"max frequency - bound {worst:.4f} over {len(report.rows)} rows",
    )


CHECKS: List[Callable[[SuiteSize], CheckResult]] = [
    check_heat_equation,
    check_hadamard,
    check_gautschi,
    check_lambda_products,
    check_row_norms,
    check_eigenstructure,
    check_decomposition,
    check_polya,
    check_hoeffding,
]


def run_verification(quick: bool = False) -> VerificationReport:
    """Run every invariant check.

    Args:
        quick: Use reduced trajectory lengths and trial counts.

    Returns:
        VerificationReport with one CheckResult per check.
    """
    size = QUICK if quick else FULL
    results: List[CheckResult] = []
    for check in CHECKS:
        name = check.__name__.removeprefix("check_")
        started = time.monotonic()
        try:
            result = check(size)
        except Exception as e:
            logger.error(f"Check {name} raised: {e}")
            result = CheckResult(name=name, passed=False, detail=f"{type(e).__name__}: {e}")
        logger.info(
            f"{result.name}: {'ok' if result.passed else 'FAILED'} "
            f"({time.monotonic() - started:.1f}s)"
        )
        results.append(result)
    return VerificationReport(quick=quick, checks=results)
