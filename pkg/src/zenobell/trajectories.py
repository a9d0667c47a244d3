"""Monte-Carlo quantum-jump unraveling of the conditional dynamics.

Independent stochastic cross-check of the deterministic no-photon
probability: each trajectory evolves under the conditional Hamiltonian
with a first-order Euler step (renormalized every step) and draws a jump
with probability dt * sum_k ||L_k psi||^2 per step.  The fraction of
trajectories with zero jumps up to t estimates ||exp(-i H t) psi0||^2.

The jump-operator rates follow the amplitude-damping convention of the
conditional Hamiltonian: -i kappa b^dag b and -i Gamma P_exc damp the
squared norm at 2 kappa <b^dag b> + 2 Gamma <P_exc>, so the operators
carry sqrt(2 kappa) and sqrt(2 Gamma).

Randomness is partitioned per trajectory (stream seed XOR trajectory
index), so batches are bit-for-bit reproducible for a fixed
(seed, n_traj, dt) and independent of execution order or chunking.
Because every trajectory starts from the same state and the pre-jump
conditional state is deterministic, the shared no-jump trajectory is
propagated once and the per-step Bernoulli chain is sampled by
inversion: trajectory i jumps at the first step where the running
no-jump survival prod_k (1 - dp_k) drops below its uniform draw u_i.
This is the same first-jump distribution as drawing one uniform per
step, couples runs with different dt through common random numbers, and
retires a trajectory at its first jump, which leaves every reported
statistic (no-jump fraction, first-jump histogram) unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import SystemSpec, cavity_annihilation
from .hilbert import OperatorMatrix, StateVector, embed

__all__ = [
    "TrajectoryBatch",
    "run_trajectories",
    "decay_operators",
]


@dataclass(frozen=True)
class TrajectoryBatch:
    """Result of one Monte-Carlo batch."""

    n_traj: int
    seed: int
    dt: float
    p0_estimate: float
    p0_stderr: float
    jump_time_histogram: tuple[tuple[float, int], ...]


def decay_operators(spec: SystemSpec) -> list[OperatorMatrix]:
    """Jump operators matching the conditional Hamiltonian of ``spec``.

    Cavity leakage sqrt(2 kappa) b plus, when Gamma > 0, atomic emission
    from the excited level.  Lambda atoms decay to both ground states
    with equal branching; the no-jump statistics do not depend on the
    branching split.
    """
    layout = spec.layout()
    ops: list[OperatorMatrix] = []
    if spec.kappa > 0:
        b = cavity_annihilation(spec.layout())
        ops.append(OperatorMatrix(layout, math.sqrt(2.0 * spec.kappa) * b.entries))
    if spec.gamma > 0:
        excited = spec.atom_levels - 1
        grounds = [0] if spec.atom_levels == 2 else [0, 1]
        rate = 2.0 * spec.gamma / len(grounds)
        for i in range(1, spec.n_atoms + 1):
            for low in grounds:
                lower = np.zeros((spec.atom_levels, spec.atom_levels), dtype=complex)
                lower[low, excited] = math.sqrt(rate)
                ops.append(embed(lower, f"atom{i}", layout))
    return ops


def _max_stable_dt(h: np.ndarray, jump_ops: list[np.ndarray]) -> float:
    scale = max(
        float(np.linalg.norm(h, 2)),
        max((float(np.linalg.norm(op, 2)) ** 2 / 2.0 for op in jump_ops), default=0.0),
    )
    if scale <= 0:
        return 0.01
    return 0.01 / scale


def run_trajectories(
    h_cond: OperatorMatrix,
    jump_ops,
    psi0: StateVector,
    t_end: float,
    n_traj: int,
    seed: int,
    dt: float | None = None,
    histogram_bins: int = 50,
) -> TrajectoryBatch:
    """Estimate the no-jump probability at ``t_end`` from ``n_traj`` runs.

    ``dt`` defaults to 0.01 divided by the largest rate in the problem
    and is rejected if larger (the first-order step would be unstable).
    The standard error is the binomial one.  The histogram covers
    first-jump times on ``histogram_bins`` uniform bins over (0, t_end];
    its entries are (left bin edge, count) and the counts sum to the
    number of trajectories that jumped.
    """
    jump_ops = list(jump_ops)
    if psi0.layout != h_cond.layout:
        raise ValueError("state and Hamiltonian live on different layouts")
    for op in jump_ops:
        if op.layout != h_cond.layout:
            raise ValueError("jump operator layout mismatch")
    if n_traj < 1:
        raise ValueError("n_traj must be >= 1")
    if seed < 0:
        raise ValueError("seed must be >= 0")
    if t_end < 0:
        raise ValueError("t_end must be >= 0")
    if abs(psi0.norm() - 1.0) > 1e-9:
        raise ValueError("psi0 must be normalized")

    h = h_cond.entries
    ls = [op.entries for op in jump_ops]
    dt_max = _max_stable_dt(h, ls)
    if dt is None:
        dt = dt_max
    elif dt <= 0:
        raise ValueError("dt must be positive")
    elif dt > dt_max * (1.0 + 1e-9):
        raise ValueError(f"dt = {dt} too large for a stable first-order step (max {dt_max:.3g})")

    n_steps = max(1, math.ceil(t_end / dt)) if t_end > 0 else 0
    dt = t_end / n_steps if n_steps else dt

    # Shared no-jump trajectory: per-step jump probability of the
    # renormalized conditional state, accumulated into the survival chain.
    dp = np.zeros(n_steps)
    psi = psi0.amplitudes.copy()
    for step in range(n_steps):
        total = 0.0
        for l_op in ls:
            total += float(np.linalg.norm(l_op @ psi) ** 2)
        dp[step] = dt * total
        if dp[step] > 0.1:
            raise ValueError("unstable dt: per-step jump probability exceeded 0.1")
        psi = psi - 1j * dt * (h @ psi)
        norm = float(np.linalg.norm(psi))
        if norm > 1.0 + 0.1:
            raise ValueError("unstable dt: norm increase detected")
        psi /= norm
    survival = np.concatenate(([1.0], np.cumprod(1.0 - dp)))

    # one uniform per trajectory from its own stream; no jump iff the
    # draw stays below the final survival probability
    u = np.array([np.random.default_rng(seed ^ traj).random() for traj in range(n_traj)])
    jumped = u >= survival[-1]
    p0 = float(np.count_nonzero(~jumped)) / n_traj
    stderr = math.sqrt(p0 * (1.0 - p0) / n_traj)

    # first step m (1-based) with survival[m] <= u, via the reversed
    # (ascending) survival chain
    ascending = survival[::-1]
    pos_from_end = np.searchsorted(ascending, u[jumped], side="right")
    first_jump_steps = survival.size - pos_from_end  # 1-based step index
    times = first_jump_steps * dt
    span = t_end if t_end > 0 else 1.0
    counts, edges = np.histogram(times, bins=histogram_bins, range=(0.0, span))
    histogram = tuple((float(edges[k]), int(counts[k])) for k in range(histogram_bins))

    return TrajectoryBatch(
        n_traj=n_traj,
        seed=seed,
        dt=dt,
        p0_estimate=p0,
        p0_stderr=stderr,
        jump_time_histogram=histogram,
    )
