"""Composed Hilbert spaces, state vectors and operators.

Everything in the toolkit works on a tensor product of labeled factors
(typically two atoms and one bosonic mode).  The basis-index convention is
fixed once and for all: indices run row-major over the factor list, i.e.
the *last* factor varies fastest.  For two qubits this gives the order
|00>, |01>, |10>, |11>.

States are allowed to be unnormalized: conditional (no-jump) evolution
under a non-Hermitian Hamiltonian shrinks the norm, and the squared norm
carries physical meaning.  All containers are immutable after
construction; operations are pure functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "HilbertLayout",
    "StateVector",
    "OperatorMatrix",
    "compose",
    "embed",
    "ladder",
    "fidelity",
    "inner",
    "basis_state",
    "state_from_amplitudes",
    "operator",
    "identity",
    "apply",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
]

HERMITIAN_TOL = 1e-12

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_X.setflags(write=False)
SIGMA_Y.setflags(write=False)
SIGMA_Z.setflags(write=False)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class HilbertLayout:
    """Ordered list of (label, dimension) factors of a product space."""

    factors: tuple[tuple[str, int], ...]
    total_dim: int = field(init=False)

    def __post_init__(self):
        labels = [lab for lab, _ in self.factors]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate factor labels in {labels}")
        for lab, dim in self.factors:
            if dim < 1:
                raise ValueError(f"factor {lab!r} has dimension {dim} < 1")
        object.__setattr__(self, "total_dim", math.prod(d for _, d in self.factors))

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lab for lab, _ in self.factors)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.factors)

    def axis_of(self, label: str) -> int:
        for k, (lab, _) in enumerate(self.factors):
            if lab == label:
                return k
        raise KeyError(f"unknown factor label {label!r}")

    def dim_of(self, label: str) -> int:
        return self.factors[self.axis_of(label)][1]

    def basis_index(self, occupations) -> int:
        """Flat index of the product basis state with the given per-factor levels."""
        occ = tuple(occupations)
        if len(occ) != len(self.factors):
            raise ValueError("need one level per factor")
        idx = 0
        for n, (lab, dim) in zip(occ, self.factors):
            if not 0 <= n < dim:
                raise ValueError(f"level {n} out of range for factor {lab!r} (dim {dim})")
            idx = idx * dim + n
        return idx

    def basis_occupations(self, index: int) -> tuple[int, ...]:
        """Inverse of :meth:`basis_index`."""
        occ = []
        for _, dim in reversed(self.factors):
            occ.append(index % dim)
            index //= dim
        return tuple(reversed(occ))


def compose(factors) -> HilbertLayout:
    """Build a layout from an iterable of (label, dimension) pairs."""
    return HilbertLayout(tuple((str(lab), int(dim)) for lab, dim in factors))


@dataclass(frozen=True)
class StateVector:
    """Complex amplitude vector over a layout; normalization not required."""

    layout: HilbertLayout
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (self.layout.total_dim,):
            raise ValueError(
                f"amplitude length {amps.size} != layout dimension {self.layout.total_dim}"
            )
        if not np.all(np.isfinite(amps.view(float))):
            raise ValueError("amplitudes must be finite")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalize a zero state")
        return StateVector(self.layout, self.amplitudes / n)


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense complex matrix on a layout; may be non-Hermitian."""

    layout: HilbertLayout
    entries: np.ndarray
    hermitian_hint: bool = False

    def __post_init__(self):
        m = np.array(self.entries, dtype=complex)
        d = self.layout.total_dim
        if m.shape != (d, d):
            raise ValueError(f"matrix shape {m.shape} != ({d}, {d})")
        if self.hermitian_hint:
            dev = np.max(np.abs(m - m.conj().T))
            if dev > HERMITIAN_TOL:
                raise ValueError(f"hermitian_hint set but max |A - A^dag| = {dev:.3g}")
        object.__setattr__(self, "entries", _frozen(m))

    def dagger(self) -> "OperatorMatrix":
        return OperatorMatrix(self.layout, self.entries.conj().T, self.hermitian_hint)


def operator(layout: HilbertLayout, entries, hermitian_hint: bool = False) -> OperatorMatrix:
    return OperatorMatrix(layout, entries, hermitian_hint)


def identity(layout: HilbertLayout) -> OperatorMatrix:
    return OperatorMatrix(layout, np.eye(layout.total_dim, dtype=complex), True)


def embed(local_op, target_label: str, layout: HilbertLayout) -> OperatorMatrix:
    """Lift a single-factor operator to the full space (identity elsewhere).

    The placement follows the fixed row-major basis order, so for a
    two-qubit layout ``embed(op, "atom2", L)`` equals ``kron(I, op)``.
    """
    local = np.asarray(local_op, dtype=complex)
    axis = layout.axis_of(target_label)
    dim = layout.dims[axis]
    if local.shape != (dim, dim):
        raise ValueError(
            f"operator shape {local.shape} does not match factor {target_label!r} (dim {dim})"
        )
    full = np.ones((1, 1), dtype=complex)
    for k, (_, d) in enumerate(layout.factors):
        full = np.kron(full, local if k == axis else np.eye(d, dtype=complex))
    herm = bool(np.max(np.abs(local - local.conj().T)) <= HERMITIAN_TOL)
    return OperatorMatrix(layout, full, herm)


def ladder(dim: int) -> np.ndarray:
    """Truncated bosonic annihilation operator, <n-1|b|n> = sqrt(n)."""
    if dim < 2:
        raise ValueError(f"ladder needs dim >= 2, got {dim}")
    b = np.zeros((dim, dim), dtype=complex)
    for n in range(1, dim):
        b[n - 1, n] = math.sqrt(n)
    return b


def apply(op: OperatorMatrix, psi: StateVector) -> StateVector:
    if op.layout is not psi.layout and op.layout != psi.layout:
        raise ValueError("operator and state live on different layouts")
    return StateVector(psi.layout, op.entries @ psi.amplitudes)


def inner(bra: StateVector, ket: StateVector) -> complex:
    if bra.layout != ket.layout:
        raise ValueError("states live on different layouts")
    return complex(np.vdot(bra.amplitudes, ket.amplitudes))


def fidelity(psi: StateVector, target: StateVector) -> float:
    """|<target|psi>|^2 / <psi|psi>: fidelity of the renormalized state.

    ``psi`` may be unnormalized (a conditional state); ``target`` must be
    normalized.  The result lies in [0, 1] up to roundoff.
    """
    if psi.layout != target.layout:
        raise ValueError("states live on different layouts")
    tn = target.norm()
    if abs(tn - 1.0) > 1e-9:
        raise ValueError(f"target must be normalized, got norm {tn}")
    n2 = float(np.vdot(psi.amplitudes, psi.amplitudes).real)
    if n2 <= 0.0:
        raise ValueError("zero-norm state has no fidelity")
    f = abs(np.vdot(target.amplitudes, psi.amplitudes)) ** 2 / n2
    return float(min(max(f, 0.0), 1.0))


def basis_state(layout: HilbertLayout, occupations) -> StateVector:
    """Product basis state |n1 n2 ...> with one level per factor."""
    amps = np.zeros(layout.total_dim, dtype=complex)
    amps[layout.basis_index(occupations)] = 1.0
    return StateVector(layout, amps)


def state_from_amplitudes(layout: HilbertLayout, mapping: dict) -> StateVector:
    """State from {occupations: amplitude}, e.g. {(1, 0, 0): 1/sqrt2, ...}."""
    amps = np.zeros(layout.total_dim, dtype=complex)
    for occ, value in mapping.items():
        amps[layout.basis_index(occ)] += value
    return StateVector(layout, amps)
