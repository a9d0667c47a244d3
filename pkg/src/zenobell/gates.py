"""Entangling-pulse, single-qubit-rotation and dissipative-CNOT protocols.

Each cavity protocol is a single square laser pulse applied while the
atoms sit in the cavity.  The run is scored conditionally on no photon
having been emitted: the returned record carries the unnormalized final
state, the no-photon probability p0 = ||psi||^2, and the fidelity of the
renormalized state against the ideal target.  When p0 < 1 the protocol
is heralded (an emission means "repeat"), and 1/p0 estimates the
expected number of attempts.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .dfs import zeno_timescale
from .dynamics import (
    RegimeReport,
    SystemSpec,
    check_regime,
    evolve_no_jump,
    h_cond_lambda,
    h_cond_two_level,
)
from .hilbert import (
    HilbertLayout,
    OperatorMatrix,
    StateVector,
    basis_state,
    compose,
    fidelity,
    state_from_amplitudes,
)

__all__ = [
    "RunRecord",
    "prepare_pair",
    "pair_target_alpha",
    "pair_target_state",
    "sqr",
    "cnot_ideal",
    "cnot_pulse",
    "cnot_duration",
    "qubit_state",
    "qubit_amplitudes",
]

QUBIT_LABELS = ("00", "01", "10", "11")


@dataclass(frozen=True)
class RunRecord:
    """Outcome of one conditional protocol run."""

    final_state: StateVector
    p0: float
    fidelity: float
    alpha: complex | None
    duration: float
    regime: RegimeReport

    @property
    def expected_attempts(self) -> float:
        """Mean number of repeat-until-success attempts, 1/p0."""
        return math.inf if self.p0 == 0 else 1.0 / self.p0


def _warn_if_slow_measurement(spec: SystemSpec, duration: float) -> None:
    if spec.kappa > 0 and duration < 10.0 * zeno_timescale(spec):
        warnings.warn(
            "pulse shorter than 10x the environment-measurement timescale; "
            "Zeno suppression of leakage may be poor",
            stacklevel=3,
        )


def pair_target_alpha(omega_minus: complex, duration: float) -> complex:
    """Ideal entangled-pair amplitude -i (Om/|Om|) sin(|Om| T / 2)."""
    om = complex(omega_minus)
    if om == 0:
        raise ValueError("omega_minus must be nonzero")
    return -1j * (om / abs(om)) * math.sin(abs(om) * duration / 2.0)


def pair_target_state(layout: HilbertLayout, alpha: complex) -> StateVector:
    """alpha |a> + sqrt(1-|alpha|^2) |00>, cavity empty, in the full layout."""
    s = 1.0 / math.sqrt(2.0)
    rest = math.sqrt(max(0.0, 1.0 - abs(alpha) ** 2))
    return state_from_amplitudes(
        layout,
        {(1, 0, 0): alpha * s, (0, 1, 0): -alpha * s, (0, 0, 0): rest},
    )


def prepare_pair(spec: SystemSpec, omega_minus: complex, duration: float) -> RunRecord:
    """Drive |00> toward alpha |a> + sqrt(1-|alpha|^2) |00> with one pulse.

    The two lasers are fixed to opposite Rabi frequencies,
    Omega_1 = -Omega_2 = omega_minus / sqrt(2), so the antisymmetric
    combination equals ``omega_minus``.  The pulse runs for ``duration``
    under the full two-level conditional Hamiltonian; out-of-regime
    parameters produce a warning, not an error.  The achieved alpha is
    the overlap of the renormalized final state with |a> (cavity empty).
    """
    if duration < 0:
        raise ValueError("duration must be >= 0")
    om = complex(omega_minus)
    if om == 0:
        raise ValueError("omega_minus must be nonzero")
    s2 = math.sqrt(2.0)
    run_spec = spec.with_rabi({(1, "0-1"): om / s2, (2, "0-1"): -om / s2})
    regime = check_regime(run_spec, abs(om))
    if not regime.in_regime:
        warnings.warn(f"parameters outside the strong-coupling regime: {regime.ratios}", stacklevel=2)
    _warn_if_slow_measurement(run_spec, duration)

    layout = run_spec.layout()
    h = h_cond_two_level(run_spec)
    psi0 = basis_state(layout, (0, 0, 0))
    final = evolve_no_jump(h, psi0, duration)
    p0 = final.norm() ** 2

    target = pair_target_state(layout, pair_target_alpha(om, duration))
    fid = fidelity(final, target)
    a_vec = state_from_amplitudes(layout, {(1, 0, 0): 1 / s2, (0, 1, 0): -1 / s2})
    achieved = complex(np.vdot(a_vec.amplitudes, final.amplitudes) / final.norm())
    return RunRecord(final, p0, fid, achieved, duration, regime)


def sqr(xi: float, phi: float) -> OperatorMatrix:
    """Single-qubit rotation cos(xi) - i sin(xi) (e^{i phi}|0><1| + h.c.).

    Applied outside the cavity, so it is modeled as the exact unitary
    with no dissipation.
    """
    u = np.array(
        [
            [math.cos(xi), -1j * math.sin(xi) * cmath.exp(1j * phi)],
            [-1j * math.sin(xi) * cmath.exp(-1j * phi), math.cos(xi)],
        ],
        dtype=complex,
    )
    return OperatorMatrix(compose([("qubit", 2)]), u)


def cnot_ideal() -> OperatorMatrix:
    """Permutation on {|00>,|01>,|10>,|11>} swapping |10> and |11>."""
    u = np.eye(4, dtype=complex)
    u[2, 2] = u[3, 3] = 0.0
    u[2, 3] = u[3, 2] = 1.0
    layout = compose([("control", 2), ("target", 2)])
    return OperatorMatrix(layout, u)


def cnot_duration(omega: float) -> float:
    """Pulse length sqrt(2) pi / |Omega| that assembles the CNOT."""
    if omega == 0:
        raise ValueError("omega must be nonzero")
    return math.sqrt(2.0) * math.pi / abs(omega)


def qubit_state(spec: SystemSpec, amplitudes) -> StateVector:
    """Embed 4 qubit amplitudes (order 00,01,10,11) in the Lambda layout.

    ``amplitudes`` may also be one of the labels "00", "01", "10", "11".
    """
    if isinstance(amplitudes, str):
        if amplitudes not in QUBIT_LABELS:
            raise ValueError(f"unknown qubit label {amplitudes!r}")
        vec = np.zeros(4, dtype=complex)
        vec[QUBIT_LABELS.index(amplitudes)] = 1.0
    else:
        vec = np.asarray(amplitudes, dtype=complex).reshape(4)
    layout = spec.layout()
    mapping = {}
    for k, (a, b) in enumerate(((0, 0), (0, 1), (1, 0), (1, 1))):
        mapping[(a, b, 0)] = vec[k]
    return state_from_amplitudes(layout, mapping)


def qubit_amplitudes(state: StateVector) -> np.ndarray:
    """Project a full-layout state onto the 4 qubit basis states (cavity empty)."""
    layout = state.layout
    return np.array(
        [state.amplitudes[layout.basis_index((a, b, 0))] for a, b in ((0, 0), (0, 1), (1, 0), (1, 1))],
        dtype=complex,
    )


def cnot_pulse(spec: SystemSpec, omega: float, input_state: StateVector) -> RunRecord:
    """Run the dissipative CNOT pulse on a qubit-subspace input state.

    Lasers drive atom 1 on "1-2" and atom 2 on "0-2", both with Rabi
    frequency sqrt(2)*omega, for a duration sqrt(2) pi / |omega|.  The
    fidelity is scored against the ideal CNOT permutation applied to the
    input amplitudes.
    """
    if omega == 0:
        raise ValueError("omega must be nonzero")
    if spec.atom_levels != 3:
        raise ValueError("the CNOT pulse needs Lambda (3-level) atoms")
    s2om = math.sqrt(2.0) * omega
    run_spec = spec.with_rabi({(1, "1-2"): s2om, (2, "0-2"): s2om})
    if input_state.layout != run_spec.layout():
        raise ValueError("input state does not live on the spec layout")
    if abs(input_state.norm() - 1.0) > 1e-9:
        raise ValueError("input state must be normalized")
    in_amps = qubit_amplitudes(input_state)
    if abs(np.linalg.norm(in_amps) - 1.0) > 1e-9:
        raise ValueError("input must be supported on the qubit states with the cavity empty")

    duration = cnot_duration(omega)
    regime = check_regime(run_spec, abs(omega))
    if not regime.in_regime:
        warnings.warn(f"parameters outside the strong-coupling regime: {regime.ratios}", stacklevel=2)
    _warn_if_slow_measurement(run_spec, duration)

    h = h_cond_lambda(run_spec)
    final = evolve_no_jump(h, input_state, duration)
    p0 = final.norm() ** 2

    target = qubit_state(run_spec, cnot_ideal().entries @ in_amps)
    fid = fidelity(final, target)
    return RunRecord(final, p0, fid, None, duration, regime)
