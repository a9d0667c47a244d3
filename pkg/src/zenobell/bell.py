"""Bell-type and Mermin-type correlation tests for prepared states.

Analyzer settings are angles in the equatorial plane of the Bloch
sphere: sigma_theta = cos(theta) sigma_x + sin(theta) sigma_y.  The spin
(correlation-function) Bell combination

    B_S = E(t1,t2) - E(t1,t2') + E(t1',t2) + E(t1',t2')

is bounded by 2 for local hidden variables and by 2*sqrt(2) for quantum
states.  For states whose correlation depends only on the angle
difference the four settings collapse to a single angle chain and
B_S = |3 E(v,0) - E(3v,0)|.

Three-qubit states are scored with the Mermin combination
|<XXX> - <YYX> - <YXY> - <XYY>| (classical bound 2, GHZ value 4); for
N > 3 qubits the recursive Mermin-Klyshko extension is used, normalized
so the classical bound stays 2 for every N and the N = 3 operator
coincides with the three-qubit combination.

Finite-statistics estimates model the readout as a projective
measurement in the sigma_theta eigenbasis (rotate, then read the
computational basis) with an independent symmetric bit-flip error per
qubit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hilbert import SIGMA_X, SIGMA_Y, StateVector, embed
from .states import entangled_pair_state

__all__ = [
    "AnalyzerSettings",
    "BellResult",
    "MerminResult",
    "sigma_theta",
    "correlation",
    "bs_value",
    "bs_reduced",
    "bs_landscape",
    "mermin_value",
    "mermin_n",
    "mermin_operator",
    "sample_correlation",
    "TSIRELSON_BOUND",
    "CLASSICAL_BOUND",
]

TSIRELSON_BOUND = 2.0 * math.sqrt(2.0)
CLASSICAL_BOUND = 2.0


@dataclass(frozen=True)
class AnalyzerSettings:
    """The four analyzer angles (radians) of a spin Bell test."""

    theta1: float
    theta1p: float
    theta2: float
    theta2p: float

    @classmethod
    def from_single_angle(cls, vartheta: float) -> "AnalyzerSettings":
        """Equally spaced chain t1 - t2 = t2 - t1' = t1' - t2' = vartheta."""
        return cls(
            theta1=3.0 * vartheta,
            theta1p=vartheta,
            theta2=2.0 * vartheta,
            theta2p=0.0,
        )


@dataclass(frozen=True)
class BellResult:
    correlations: dict
    b_s: float
    violated: bool


@dataclass(frozen=True)
class MerminResult:
    value: float
    classical_bound: float
    quantum_bound: float
    n_qubits: int


def sigma_theta(theta: float) -> np.ndarray:
    """cos(theta) sigma_x + sin(theta) sigma_y; Hermitian, eigenvalues +-1."""
    return math.cos(theta) * SIGMA_X + math.sin(theta) * SIGMA_Y


def _check_normalized(state: StateVector) -> None:
    if abs(state.norm() - 1.0) > 1e-9:
        raise ValueError(f"state must be normalized, got norm {state.norm()}")


def _qubit_label(state: StateVector, index: int) -> str:
    factors = state.layout.factors
    if not 0 <= index < len(factors):
        raise IndexError(f"qubit index {index} out of range")
    label, dim = factors[index]
    if dim != 2:
        raise ValueError(f"factor {label!r} has dimension {dim}, not a qubit")
    return label


def correlation(state: StateVector, i: int, j: int, theta_i: float, theta_j: float) -> float:
    """E(theta_i, theta_j) = <sigma_theta_i^(i) sigma_theta_j^(j)>."""
    _check_normalized(state)
    if i == j:
        raise ValueError("correlation needs two distinct qubits")
    op_i = embed(sigma_theta(theta_i), _qubit_label(state, i), state.layout).entries
    op_j = embed(sigma_theta(theta_j), _qubit_label(state, j), state.layout).entries
    val = complex(np.vdot(state.amplitudes, op_i @ (op_j @ state.amplitudes)))
    if abs(val.imag) > 1e-12:
        raise AssertionError(f"correlation came out non-real: {val}")
    return float(val.real)


def bs_value(state: StateVector, settings: AnalyzerSettings, i: int = 0, j: int = 1) -> BellResult:
    """The four-correlation spin Bell combination; violated iff |B_S| > 2."""
    pairs = {
        ("theta1", "theta2"): (settings.theta1, settings.theta2),
        ("theta1", "theta2p"): (settings.theta1, settings.theta2p),
        ("theta1p", "theta2"): (settings.theta1p, settings.theta2),
        ("theta1p", "theta2p"): (settings.theta1p, settings.theta2p),
    }
    corr = {k: correlation(state, i, j, a, b) for k, (a, b) in pairs.items()}
    b_s = (
        corr[("theta1", "theta2")]
        - corr[("theta1", "theta2p")]
        + corr[("theta1p", "theta2")]
        + corr[("theta1p", "theta2p")]
    )
    if abs(b_s) > TSIRELSON_BOUND + 1e-9:
        raise AssertionError(f"|B_S| = {abs(b_s)} exceeds the quantum bound; numerics are off")
    return BellResult(correlations=corr, b_s=b_s, violated=abs(b_s) > CLASSICAL_BOUND)


def bs_reduced(state: StateVector, vartheta: float, i: int = 0, j: int = 1) -> float:
    """|3 E(vartheta, 0) - E(3 vartheta, 0)| for difference-dependent states.

    Difference dependence E(a, b) = E(a-b, 0) is asserted numerically on
    20 deterministic pseudo-random angle pairs before the reduction is
    trusted.
    """
    rng = np.random.default_rng(20211123)
    for _ in range(20):
        a, b = rng.uniform(0.0, 2.0 * math.pi, size=2)
        if abs(correlation(state, i, j, a, b) - correlation(state, i, j, a - b, 0.0)) > 1e-10:
            raise ValueError("correlation of this state does not depend only on the angle difference")
    return abs(3.0 * correlation(state, i, j, vartheta, 0.0) - correlation(state, i, j, 3.0 * vartheta, 0.0))


def pair_correlation(alpha_sq: float, vartheta: float) -> float:
    """Closed-form E(vartheta, 0) = -|alpha|^2 cos(vartheta) for the pulse family."""
    return -alpha_sq * math.cos(vartheta)


def bs_landscape(omega_t_grid, vartheta_grid) -> list[tuple[float, float, float, bool]]:
    """Bell-violation landscape over pulse area |Omega| T and analyzer angle.

    For each grid point the pulse family gives |alpha| = |sin(|Omega|T/2)|
    and the reduced combination B_S = |alpha|^2 |3 cos(v) - cos(3v)|.
    Rows are (omega_t, vartheta, b_s, violated), vartheta varying fastest.
    """
    omega_t_grid = list(omega_t_grid)
    vartheta_grid = list(vartheta_grid)
    if not omega_t_grid or not vartheta_grid:
        raise ValueError("grids must be nonempty")
    rows = []
    for om_t in omega_t_grid:
        alpha_sq = math.sin(float(om_t) / 2.0) ** 2
        for v in vartheta_grid:
            b = abs(3.0 * pair_correlation(alpha_sq, v) - pair_correlation(alpha_sq, 3.0 * v))
            rows.append((float(om_t), float(v), b, b > CLASSICAL_BOUND))
    return rows


def _pauli_string(letters: str) -> np.ndarray:
    ops = {"X": SIGMA_X, "Y": SIGMA_Y}
    m = np.ones((1, 1), dtype=complex)
    for ch in letters:
        m = np.kron(m, ops[ch])
    return m


def _expectation(state: StateVector, matrix: np.ndarray) -> float:
    val = complex(np.vdot(state.amplitudes, matrix @ state.amplitudes))
    if abs(val.imag) > 1e-10:
        raise AssertionError(f"expectation came out non-real: {val}")
    return float(val.real)


def mermin_value(state: StateVector) -> float:
    """|<XXX> - <YYX> - <YXY> - <XYY>| on exactly three qubits."""
    _check_normalized(state)
    if state.layout.dims != (2, 2, 2):
        raise ValueError("mermin_value needs a state on exactly 3 qubits")
    moments = {s: _expectation(state, _pauli_string(s)) for s in ("XXX", "YYX", "YXY", "XYY")}
    return abs(moments["XXX"] - moments["YYX"] - moments["YXY"] - moments["XYY"])


def mermin_operator(n: int) -> np.ndarray:
    """The N-qubit Mermin combination as a dense 2^N x 2^N matrix.

    Built from the Mermin-Klyshko recursion
    M_k = (M_{k-1} (X + Y) + M'_{k-1} (X - Y)) / 2, where the prime swaps
    X and Y everywhere, then rescaled to -2 M'_N so that the classical
    bound is 2 for every N and N = 3 reproduces
    XXX - YYX - YXY - XYY exactly.  The quantum bound is 2^{(N+1)/2}.
    """
    if n < 3:
        raise ValueError("mermin_operator needs at least 3 qubits")
    m, ms = SIGMA_X.copy(), SIGMA_Y.copy()
    plus, minus = SIGMA_X + SIGMA_Y, SIGMA_X - SIGMA_Y
    for _ in range(n - 1):
        m_new = 0.5 * (np.kron(m, plus) + np.kron(ms, minus))
        ms_new = 0.5 * (np.kron(ms, plus) - np.kron(m, minus))
        m, ms = m_new, ms_new
    return -2.0 * ms


def mermin_n(state: StateVector) -> MerminResult:
    """Generalized Mermin value for N >= 3 qubits, with its two bounds."""
    _check_normalized(state)
    dims = state.layout.dims
    n = len(dims)
    if n < 3 or any(d != 2 for d in dims):
        raise ValueError("mermin_n needs a state on N >= 3 qubits")
    value = abs(_expectation(state, mermin_operator(n)))
    return MerminResult(
        value=value,
        classical_bound=CLASSICAL_BOUND,
        quantum_bound=2.0 ** ((n + 1) / 2.0),
        n_qubits=n,
    )


def sample_correlation(
    state: StateVector,
    i: int,
    j: int,
    theta_i: float,
    theta_j: float,
    shots: int,
    seed: int,
    readout_error: float = 0.0,
) -> tuple[float, float]:
    """Finite-shot estimate of E(theta_i, theta_j) with noisy readout.

    Each shot projects both qubits onto the sigma_theta eigenbasis and
    multiplies the two +-1 outcomes; each recorded outcome is flipped
    independently with probability ``readout_error``, so the estimator
    converges to (1 - 2 eps)^2 E.  Returns (estimate, stderr) with
    stderr the sample standard deviation over sqrt(shots) (zero for a
    single shot).  Deterministic for a fixed seed; parallel callers
    should partition work by deriving one seed per shot block
    (seed + block index).
    """
    _check_normalized(state)
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if not 0.0 <= readout_error < 0.5:
        raise ValueError("readout_error must lie in [0, 0.5)")
    if i == j:
        raise ValueError("sample_correlation needs two distinct qubits")

    projs = []
    for index, theta in ((i, theta_i), (j, theta_j)):
        label = _qubit_label(state, index)
        plus = np.array([1.0, np.exp(1j * theta)], dtype=complex) / math.sqrt(2.0)
        p_plus = np.outer(plus, plus.conj())
        projs.append(
            (
                embed(p_plus, label, state.layout).entries,
                embed(np.eye(2, dtype=complex) - p_plus, label, state.layout).entries,
            )
        )

    psi = state.amplitudes
    probs = np.empty(4)
    outcome_products = np.array([1.0, -1.0, -1.0, 1.0])
    for k, (si, sj) in enumerate(((0, 0), (0, 1), (1, 0), (1, 1))):
        probs[k] = np.linalg.norm(projs[0][si] @ (projs[1][sj] @ psi)) ** 2
    probs = np.clip(probs, 0.0, None)
    probs /= probs.sum()

    rng = np.random.default_rng(seed)
    idx = rng.choice(4, size=shots, p=probs)
    flips_i = rng.random(shots) < readout_error
    flips_j = rng.random(shots) < readout_error
    values = outcome_products[idx] * np.where(flips_i, -1.0, 1.0) * np.where(flips_j, -1.0, 1.0)
    estimate = float(values.mean())
    stderr = float(values.std(ddof=1) / math.sqrt(shots)) if shots > 1 else 0.0
    return estimate, stderr


def landscape_state(omega_t: float) -> StateVector:
    """The pulse-family state at a given pulse area (phase convention -i)."""
    return entangled_pair_state(-1j * math.sin(omega_t / 2.0))
