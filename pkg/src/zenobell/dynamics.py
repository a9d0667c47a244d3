"""Conditional Hamiltonians and no-jump evolution.

Units: hbar = 1 and all rates (couplings, Rabi frequencies, decay rates)
are expressed in units of the atom-cavity coupling g unless the caller
overrides g.  Everything is resonant: cavity, laser and atomic transition
share one frequency, so the interaction-picture Hamiltonians carry no
detuning terms.

The no-jump branch of the quantum-jump picture evolves an unnormalized
state under a non-Hermitian conditional Hamiltonian

    H = i g sum_i (b s_i^+ - h.c.)  +  1/2 sum (Omega s^+ + h.c.)
        - i Gamma sum_i P_exc^(i)  -  i kappa b^dag b

where b is the cavity annihilation operator and s_i^+ raises the
cavity-coupled transition of atom i.  The squared norm of the evolved
state is the probability that no photon has been emitted.  Amplitudes
damp at Gamma and kappa, so intensities decay at 2*Gamma and 2*kappa;
jump operators elsewhere in the package carry sqrt(2 Gamma), sqrt(2 kappa)
to stay consistent with this convention.

Two-level atoms use levels 0 (ground) and 1 (excited, cavity-coupled via
the "0-1" transition).  Lambda atoms use ground levels 0 and 1 (the
qubit) plus the excited level 2; the cavity couples 1-2 and lasers may
drive "0-2" and "1-2".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from scipy.linalg import expm

from .hilbert import (
    HilbertLayout,
    OperatorMatrix,
    StateVector,
    compose,
    embed,
    ladder,
)

__all__ = [
    "SystemSpec",
    "RegimeReport",
    "h_cond_two_level",
    "h_cond_lambda",
    "evolve_no_jump",
    "no_photon_probability",
    "check_regime",
    "cavity_annihilation",
]

REGIME_THRESHOLD = 0.1


def _valid_transitions(levels: int) -> frozenset:
    return frozenset({"0-1"}) if levels == 2 else frozenset({"0-2", "1-2"})


@dataclass(frozen=True)
class SystemSpec:
    """Declarative description of the atoms-in-cavity system.

    ``rabi`` maps (atom index, transition label) to a complex Rabi
    frequency; atom indices are 1-based.  ``n_max`` is the largest Fock
    state kept in the cavity truncation.
    """

    atom_levels: int = 2
    n_atoms: int = 2
    g: float = 1.0
    kappa: float = 1.0
    gamma: float = 0.0
    rabi: Mapping = field(default_factory=dict)
    n_max: int = 2

    def __post_init__(self):
        if self.atom_levels not in (2, 3):
            raise ValueError(f"atom_levels must be 2 or 3, got {self.atom_levels}")
        if self.n_atoms < 1:
            raise ValueError("need at least one atom")
        if not self.g > 0:
            raise ValueError(f"g must be positive, got {self.g}")
        if self.kappa < 0 or self.gamma < 0:
            raise ValueError("decay rates must be nonnegative")
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")
        valid = _valid_transitions(self.atom_levels)
        clean = {}
        for (atom, trans), omega in dict(self.rabi).items():
            if not 1 <= int(atom) <= self.n_atoms:
                raise ValueError(f"rabi entry for unknown atom {atom}")
            if trans not in valid:
                raise ValueError(
                    f"transition {trans!r} invalid for {self.atom_levels}-level atoms "
                    f"(expected one of {sorted(valid)})"
                )
            clean[(int(atom), str(trans))] = complex(omega)
        object.__setattr__(self, "rabi", clean)

    def layout(self) -> HilbertLayout:
        factors = [(f"atom{i}", self.atom_levels) for i in range(1, self.n_atoms + 1)]
        factors.append(("cav", self.n_max + 1))
        return compose(factors)

    def with_rabi(self, rabi: Mapping) -> "SystemSpec":
        return SystemSpec(
            atom_levels=self.atom_levels,
            n_atoms=self.n_atoms,
            g=self.g,
            kappa=self.kappa,
            gamma=self.gamma,
            rabi=rabi,
            n_max=self.n_max,
        )


@dataclass(frozen=True)
class RegimeReport:
    """Strong-coupling-regime check: every ratio must be small."""

    ratios: dict
    margins: dict
    in_regime: bool
    threshold: float


def _transition_op(levels: int, trans: str) -> np.ndarray:
    """Raising operator |upper><lower| for a transition label "l-u"."""
    lo, up = (int(s) for s in trans.split("-"))
    op = np.zeros((levels, levels), dtype=complex)
    op[up, lo] = 1.0
    return op


def cavity_annihilation(layout: HilbertLayout) -> OperatorMatrix:
    """The cavity annihilation operator embedded in the full space."""
    return embed(ladder(layout.dim_of("cav")), "cav", layout)


def _h_cond(spec: SystemSpec, cavity_transition: str, excited: int) -> OperatorMatrix:
    layout = spec.layout()
    d = layout.total_dim
    b_full = cavity_annihilation(layout).entries
    h = np.zeros((d, d), dtype=complex)

    proj_exc = np.zeros((spec.atom_levels, spec.atom_levels), dtype=complex)
    proj_exc[excited, excited] = 1.0
    raise_cav = _transition_op(spec.atom_levels, cavity_transition)

    for i in range(1, spec.n_atoms + 1):
        label = f"atom{i}"
        s_plus = embed(raise_cav, label, layout).entries
        # antisymmetric cavity coupling: i g (b s+ - b^dag s-)
        coupling = b_full @ s_plus
        h += 1j * spec.g * (coupling - coupling.conj().T)
        h += -1j * spec.gamma * embed(proj_exc, label, layout).entries

    for (atom, trans), omega in spec.rabi.items():
        s_plus = embed(_transition_op(spec.atom_levels, trans), f"atom{atom}", layout).entries
        h += 0.5 * (omega * s_plus + np.conj(omega) * s_plus.conj().T)

    h += -1j * spec.kappa * (b_full.conj().T @ b_full)
    return OperatorMatrix(layout, h)


def h_cond_two_level(spec: SystemSpec) -> OperatorMatrix:
    """Conditional Hamiltonian for two two-level atoms in the leaky cavity.

    Both atoms couple to the cavity mode on their 0-1 transition with
    strength g; lasers enter through ``spec.rabi``; the anti-Hermitian
    part (-i Gamma on the excited levels, -i kappa b^dag b) is negative
    semidefinite.
    """
    if spec.atom_levels != 2 or spec.n_atoms != 2:
        raise ValueError("two-level scheme needs exactly two 2-level atoms")
    return _h_cond(spec, cavity_transition="0-1", excited=1)


def h_cond_lambda(spec: SystemSpec) -> OperatorMatrix:
    """Conditional Hamiltonian for two Lambda atoms in the leaky cavity.

    The cavity couples each atom's 1-2 transition; lasers drive whatever
    ``spec.rabi`` prescribes (for the dissipative CNOT: atom 1 on "1-2"
    and atom 2 on "0-2", both with Rabi frequency sqrt(2)*Omega); level 2
    decays at Gamma.
    """
    if spec.atom_levels != 3 or spec.n_atoms != 2:
        raise ValueError("Lambda scheme needs exactly two 3-level atoms")
    return _h_cond(spec, cavity_transition="1-2", excited=2)


def evolve_no_jump(h: OperatorMatrix, psi0: StateVector, t: float) -> StateVector:
    """exp(-i H t) |psi0>: the unnormalized no-emission conditional state.

    Uses the dense scaling-and-squaring Pade matrix exponential; the test
    suite checks it against an adaptive step-halving integrator.
    """
    if t < 0:
        raise ValueError(f"evolution time must be >= 0, got {t}")
    if h.layout != psi0.layout:
        raise ValueError("Hamiltonian and state live on different layouts")
    if t == 0.0:
        return psi0
    u = expm(-1j * h.entries * t)
    return StateVector(psi0.layout, u @ psi0.amplitudes)


def no_photon_probability(h: OperatorMatrix, psi0: StateVector, t: float) -> float:
    """Probability of zero emissions in (0, t): ||exp(-i H t) psi0||^2."""
    return evolve_no_jump(h, psi0, t).norm() ** 2


def check_regime(spec: SystemSpec, omega_eff: float, threshold: float = REGIME_THRESHOLD) -> RegimeReport:
    """Check Gamma << |Omega| << g^2/kappa and |Omega| << kappa.

    "Much smaller" is quantified as ratio < ``threshold`` (default 0.1).
    """
    if not omega_eff > 0:
        raise ValueError("omega_eff must be positive")
    om = abs(omega_eff)
    ratios = {
        "gamma_over_omega": spec.gamma / om,
        "omega_kappa_over_g2": om * spec.kappa / spec.g**2,
        "omega_over_kappa": om / spec.kappa if spec.kappa > 0 else float("inf"),
    }
    margins = {k: threshold - v for k, v in ratios.items()}
    return RegimeReport(
        ratios=ratios,
        margins=margins,
        in_regime=all(v < threshold for v in ratios.values()),
        threshold=threshold,
    )
