import numpy as np
import pytest

from zenobell.hilbert import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    OperatorMatrix,
    StateVector,
    apply,
    basis_state,
    compose,
    embed,
    fidelity,
    ladder,
    state_from_amplitudes,
)

from oracles import embed_by_index


def test_compose_two_qubits_basis_order():
    layout = compose([("atom1", 2), ("atom2", 2)])
    assert layout.total_dim == 4
    # last factor varies fastest: |00>, |01>, |10>, |11>
    assert [layout.basis_index(occ) for occ in ((0, 0), (0, 1), (1, 0), (1, 1))] == [0, 1, 2, 3]
    assert layout.basis_occupations(2) == (1, 0)


def test_compose_three_qutrits():
    layout = compose([("atom1", 3), ("atom2", 3), ("cav", 3)])
    assert layout.total_dim == 27


def test_compose_rejects_degenerate_input():
    with pytest.raises(ValueError):
        compose([("cav", 0)])
    with pytest.raises(ValueError):
        compose([("a", 2), ("a", 2)])


def test_embed_sigma_x_flips_first_qubit():
    layout = compose([("atom1", 2), ("atom2", 2)])
    op = embed(SIGMA_X, "atom1", layout)
    flipped = apply(op, basis_state(layout, (0, 0)))
    assert np.allclose(flipped.amplitudes, basis_state(layout, (1, 0)).amplitudes)


def test_embed_annihilation_on_cavity():
    layout = compose([("atom1", 2), ("cav", 3)])
    op = embed(ladder(3), "cav", layout)
    lowered = apply(op, basis_state(layout, (0, 1)))
    assert np.allclose(lowered.amplitudes, basis_state(layout, (0, 0)).amplitudes)


def test_embed_matches_index_oracle():
    layout = compose([("atom1", 2), ("atom2", 2)])
    assert np.allclose(embed(SIGMA_Y, "atom2", layout).entries, np.kron(np.eye(2), SIGMA_Y))
    rng = np.random.default_rng(3)
    dims = (2, 3, 4)
    layout = compose([("a", 2), ("b", 3), ("c", 4)])
    for axis, label in enumerate(("a", "b", "c")):
        local = rng.normal(size=(dims[axis],) * 2) + 1j * rng.normal(size=(dims[axis],) * 2)
        assert np.allclose(embed(local, label, layout).entries, embed_by_index(local, axis, dims))


def test_embed_errors():
    layout = compose([("atom1", 2), ("cav", 3)])
    with pytest.raises(KeyError):
        embed(SIGMA_X, "nope", layout)
    with pytest.raises(ValueError):
        embed(SIGMA_X, "cav", layout)


def test_embed_preserves_spectrum():
    rng = np.random.default_rng(11)
    for dim, label in ((2, "a"), (3, "b")):
        layout = compose([("a", 2), ("b", 3)])
        local = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        full = embed(local, label, layout)
        local_eigs = np.sort_complex(np.linalg.eigvals(local))
        full_eigs = np.sort_complex(np.linalg.eigvals(full.entries))
        multiplicity = layout.total_dim // dim
        expected = np.sort_complex(np.repeat(local_eigs, multiplicity))
        assert np.allclose(np.sort_complex(full_eigs), expected, atol=1e-10)


def test_disjoint_embeds_commute():
    rng = np.random.default_rng(5)
    layout = compose([("a", 2), ("b", 3), ("c", 2)])
    op_a = embed(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)), "a", layout).entries
    op_b = embed(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)), "b", layout).entries
    assert np.max(np.abs(op_a @ op_b - op_b @ op_a)) <= 1e-12


def test_pauli_algebra_on_embedded_qubit():
    layout = compose([("a", 2), ("cav", 3)])
    sx = embed(SIGMA_X, "a", layout).entries
    sy = embed(SIGMA_Y, "a", layout).entries
    sz = embed(SIGMA_Z, "a", layout).entries
    assert np.max(np.abs(sx @ sy - 1j * sz)) <= 1e-14


def test_ladder_matrix_elements():
    assert np.allclose(ladder(2), [[0, 1], [0, 0]])
    b = ladder(3)
    ket2 = np.array([0, 0, 1], dtype=complex)
    assert np.allclose(b @ ket2, [0, np.sqrt(2), 0])
    assert np.allclose(np.diag(b.conj().T @ b), [0, 1, 2])
    with pytest.raises(ValueError):
        ladder(1)


def test_fidelity_basics():
    layout = compose([("q1", 2), ("q2", 2)])
    zero = basis_state(layout, (0, 0))
    one = basis_state(layout, (1, 1))
    assert fidelity(zero, zero) == pytest.approx(1.0, abs=1e-15)
    assert fidelity(one, zero) == pytest.approx(0.0, abs=1e-15)
    shrunk = StateVector(layout, 0.6 * zero.amplitudes)
    assert fidelity(shrunk, zero) == pytest.approx(1.0, abs=1e-12)


def test_fidelity_errors():
    layout = compose([("q1", 2)])
    zero = basis_state(layout, (0,))
    null = StateVector(layout, np.zeros(2))
    with pytest.raises(ValueError):
        fidelity(null, zero)
    with pytest.raises(ValueError):
        fidelity(zero, StateVector(layout, 0.5 * zero.amplitudes))


def test_fidelity_and_norm_ranges_random():
    rng = np.random.default_rng(9)
    layout = compose([("q1", 2), ("q2", 2), ("q3", 2)])
    for _ in range(50):
        a = rng.normal(size=8) + 1j * rng.normal(size=8)
        b = rng.normal(size=8) + 1j * rng.normal(size=8)
        psi = StateVector(layout, a)
        target = StateVector(layout, b / np.linalg.norm(b))
        assert psi.norm() >= 0
        assert 0.0 <= fidelity(psi, target) <= 1.0


def test_hermitian_hint_enforced():
    layout = compose([("q1", 2)])
    with pytest.raises(ValueError):
        OperatorMatrix(layout, [[0, 1], [0, 0]], hermitian_hint=True)
    OperatorMatrix(layout, SIGMA_Y, hermitian_hint=True)


def test_containers_immutable():
    layout = compose([("q1", 2)])
    psi = basis_state(layout, (0,))
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 2.0
    op = OperatorMatrix(layout, SIGMA_X)
    with pytest.raises(ValueError):
        op.entries[0, 0] = 1.0


def test_state_from_amplitudes_accumulates():
    layout = compose([("q1", 2), ("q2", 2)])
    s = 1 / np.sqrt(2)
    psi = state_from_amplitudes(layout, {(1, 0): s, (0, 1): -s})
    assert psi.norm() == pytest.approx(1.0)
    assert psi.amplitudes[layout.basis_index((0, 1))] == pytest.approx(-s)
