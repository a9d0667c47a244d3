"""Sequential atom entanglement through a photonic-band-gap defect mode.

Inside the band gap an excited atom cannot radiate into free space; it
exchanges its excitation coherently with the resonant defect mode at the
vacuum-Rabi rate g.  Sending one excited atom and then one ground-state
atom through the defect, with interaction times t1 and t2, leaves the
pair in a superposition whose weights are products of the single-atom
exchange amplitudes.  Choosing g*t1 = pi/4 and g*t2 = pi/2 empties the
mode and leaves the atoms maximally entangled.

The coupling convention is the antisymmetric one, i g (b s+ - h.c.),
matching the cavity modules; it makes the exchange amplitudes real,
c_e(t) = cos(g t) and c_g(t) = -sin(g t), and yields the plus-sign Bell
state (|e g> + |g e>)/sqrt(2) at the optimal times.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .hilbert import HilbertLayout, StateVector, compose, fidelity, state_from_amplitudes

__all__ = [
    "TransitPlan",
    "jc_amplitudes",
    "pbg_layout",
    "pbg_final_state",
    "pbg_optimal_times",
    "bell_target",
]


@dataclass(frozen=True)
class TransitPlan:
    """Coupling strength and the two atom-defect interaction times."""

    g: float
    t1: float
    t2: float

    def __post_init__(self):
        if not self.g > 0:
            raise ValueError(f"g must be positive, got {self.g}")
        for name, t in (("t1", self.t1), ("t2", self.t2)):
            if not (math.isfinite(t) and t >= 0):
                raise ValueError(f"{name} must be finite and >= 0, got {t}")


def jc_amplitudes(g: float, t: float, loss: float = 0.0) -> tuple[complex, complex]:
    """Resonant vacuum-Rabi amplitudes of the photon-atom bound state.

    Starting from |excited, 0 photons>, returns (c_e, c_g) with
    c_e multiplying |e>|0> and c_g multiplying |g>|1>.  With no loss the
    solution is (cos(g t), -sin(g t)) and |c_e|^2 + |c_g|^2 = 1.  A
    phenomenological defect-mode amplitude loss rate may be supplied for
    sensitivity studies; the pair then decays below unit norm.
    """
    if not g > 0:
        raise ValueError("g must be positive")
    if t < 0:
        raise ValueError("t must be >= 0")
    if loss < 0:
        raise ValueError("loss must be >= 0")
    if loss == 0.0:
        return complex(math.cos(g * t)), complex(-math.sin(g * t))
    h = np.array([[0.0, 1j * g], [-1j * g, -1j * loss]], dtype=complex)
    c = expm(-1j * h * t) @ np.array([1.0, 0.0], dtype=complex)
    return complex(c[0]), complex(c[1])


def pbg_layout() -> HilbertLayout:
    """Two two-level atoms and the (0/1 photon) defect mode."""
    return compose([("atom1", 2), ("atom2", 2), ("defect", 2)])


def pbg_final_state(plan: TransitPlan, loss: float = 0.0) -> StateVector:
    """State after both atoms have crossed the defect.

    c_e(t1)|e g 0> + c_g(t1) c_e(t2)|g g 1> + c_g(t1) c_g(t2)|g e 0>,
    with excited = level 1.  Unit norm for loss = 0.
    """
    ce1, cg1 = jc_amplitudes(plan.g, plan.t1, loss)
    ce2, cg2 = jc_amplitudes(plan.g, plan.t2, loss)
    return state_from_amplitudes(
        pbg_layout(),
        {
            (1, 0, 0): ce1,
            (0, 0, 1): cg1 * ce2,
            (0, 1, 0): cg1 * cg2,
        },
    )


def bell_target() -> StateVector:
    """(|e g> + |g e>)/sqrt(2) with the defect mode empty."""
    s = 1.0 / math.sqrt(2.0)
    return state_from_amplitudes(pbg_layout(), {(1, 0, 0): s, (0, 1, 0): s})


def pbg_optimal_times(g: float) -> TransitPlan:
    """Interaction times g*t1 = pi/4, g*t2 = pi/2 giving the Bell state.

    t2 empties the photon branch (c_e(t2) = 0) and t1 balances the two
    atomic branches (|c_e(t1)| = 1/sqrt(2)).  The returned plan is
    self-checked against the Bell-state fidelity.
    """
    if not g > 0:
        raise ValueError("g must be positive")
    plan = TransitPlan(g=g, t1=math.pi / (4.0 * g), t2=math.pi / (2.0 * g))
    if fidelity(pbg_final_state(plan), bell_target()) < 1.0 - 1e-10:
        raise AssertionError("optimal transit plan failed its Bell-fidelity self-check")
    return plan
