import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidquant.mosaic import enumerate_mosaics, generate_moves, mosaic_count, mosaic_from_rank, apply_move
from braidquant.motif import ContractError
from braidquant.oracle import writhe
from braidquant.orbits import decompose
from braidquant.quantum import (
    DiagonalObservable,
    PermutationUnitary,
    QuantumState,
    apply_unitary,
    basis_state,
    build_observable,
    check_adjoint_invariance,
    check_adjoint_invariance_dense,
    expectation,
    hilbert_inject,
    inject_unitary,
    measure_sample,
    observable_from_table,
    orbit_state,
    same_type_quantum,
    sample_indices,
    superposition,
    unitary_of_move,
)

from .conftest import m

R2_22 = next(mv for mv in generate_moves(2, 2) if mv.family == "R2" and mv.lhs == (1, -1))
P1_22 = next(mv for mv in generate_moves(2, 2) if mv.family == "P1")


def test_basis_state():
    psi = basis_state(m("0,0", 2))
    assert psi.amplitudes[4] == 1 and np.count_nonzero(psi.amplitudes) == 1
    assert psi.norm() == 1.0
    states = [basis_state(b) for b in enumerate_mosaics(2, 2)]
    for a, b in itertools.combinations(states, 2):
        assert a.inner(b) == 0


def test_state_normalisation_enforced():
    with pytest.raises(ContractError):
        QuantumState(np.ones(9), 2, 2)
    with pytest.raises(ContractError):
        QuantumState(np.ones(4) / 2, 2, 2)


def test_unitary_of_r2_move():
    u = unitary_of_move(R2_22, (2, 2))
    moved = np.flatnonzero(u.image != np.arange(9))
    # brute force over the 9 mosaics
    expected = [b.rank for b in enumerate_mosaics(2, 2) if apply_move(R2_22, b) != b]
    assert moved.tolist() == sorted(expected) and len(moved) == 2
    assert u.then(u).is_identity()
    with pytest.raises(ContractError):
        unitary_of_move(R2_22, (2, 3))


def test_permutation_unitary_must_be_bijection():
    with pytest.raises(ContractError):
        PermutationUnitary(np.zeros(9, dtype=int), 2, 2)


def test_apply_unitary():
    u = unitary_of_move(R2_22)
    sym = superposition([(m("0,0", 2), 1), (m("1,-1", 2), 1)])
    assert apply_unitary(u, sym) == sym
    for beta in enumerate_mosaics(2, 2):
        assert apply_unitary(u, basis_state(beta)) == basis_state(apply_move(R2_22, beta))
    psi = superposition([(m("0,0", 2), 0.6), (m("1,1", 2), 0.8j)])
    assert apply_unitary(u, apply_unitary(u, psi)) == psi
    assert apply_unitary(u, psi).norm() == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ContractError):
        apply_unitary(u, basis_state(m("0,0", 3)))


def test_unitary_matrix_is_unitary():
    u = unitary_of_move(R2_22).matrix()
    assert np.array_equal(u @ u.conj().T, np.eye(9))


def test_writhe_observable_2_2():
    omega = build_observable(writhe, 2, 2)
    # tile-sign sums in LEX order b-1b-1, b-1 1, b-1b1, 1b-1, 11, 1b1, b1b-1, b1 1, b1b1
    assert omega.values.tolist() == [-2, -1, 0, -1, 0, 1, 0, 1, 2]


def test_constant_observable():
    omega = build_observable(lambda b: 3.5, 2, 2)
    assert np.array_equal(omega.matrix(), 3.5 * np.eye(9))
    assert check_adjoint_invariance(omega, unitary_of_move(P1_22))


def test_orbit_id_observable_eigenspaces():
    t = decompose(2, 2)
    omega = observable_from_table(t)
    for value in np.unique(omega.values):
        span = {int(r) for r in np.flatnonzero(omega.values == value)}
        assert span == set(t.orbits()[int(value)])


def test_observable_values_finite():
    with pytest.raises(ContractError):
        DiagonalObservable(np.array([np.nan] * 9), 2, 2)


def test_adjoint_invariance_writhe_3_4():
    omega = build_observable(writhe, 3, 4)
    for mv in generate_moves(3, 4):
        assert check_adjoint_invariance(omega, unitary_of_move(mv))


def test_adjoint_invariance_violation():
    omega = build_observable(lambda b: b.tiles[0], 2, 2)
    verdict = check_adjoint_invariance(omega, unitary_of_move(P1_22))
    assert not verdict
    assert verdict.index in {b.rank for b in enumerate_mosaics(2, 2) if apply_move(P1_22, b) != b}


def test_dense_path_agrees_with_diagonal_path():
    for probe in (writhe, lambda b: b.tiles[0], lambda b: float(b.rank % 3)):
        omega = build_observable(probe, 2, 3)
        for mv in generate_moves(2, 3):
            u = unitary_of_move(mv)
            assert check_adjoint_invariance_dense(omega.matrix(), u) == bool(check_adjoint_invariance(omega, u))


def test_dense_path_general_hermitian():
    t = decompose(2, 2)
    # projector onto the uniform superposition of an orbit commutes with every generator
    psi = orbit_state(t, t.orbit_id(m("0,0", 2)))
    proj = np.outer(psi.amplitudes, psi.amplitudes.conj())
    assert all(check_adjoint_invariance_dense(proj, unitary_of_move(mv)) for mv in generate_moves(2, 2))
    with pytest.raises(ContractError):
        check_adjoint_invariance_dense(np.triu(np.ones((9, 9))), unitary_of_move(P1_22))


def test_converse_non_orbit_constant_probes_fail():
    t = decompose(2, 2)
    units = [unitary_of_move(mv) for mv in generate_moves(2, 2)]
    rng = np.random.default_rng(0)
    for _ in range(50):
        values = rng.integers(0, 3, size=9).astype(float)
        omega = DiagonalObservable(values, 2, 2)
        orbit_constant = all(len({values[r] for r in rs}) == 1 for rs in t.orbits().values())
        assert orbit_constant == all(check_adjoint_invariance(omega, u) for u in units)


def test_expectation_examples():
    omega = build_observable(writhe, 2, 2)
    for beta in enumerate_mosaics(2, 2):
        assert expectation(omega, basis_state(beta)) == writhe(beta)
    psi = superposition([(m("1,0", 2), 1), (m("0,0", 2), 1)])
    assert expectation(omega, psi) == pytest.approx(0.5, abs=1e-15)


def test_expectation_on_orbit_superposition():
    t = decompose(3, 3)
    omega = build_observable(writhe, 3, 3)
    for oid in t.representatives.tolist():
        rep = mosaic_from_rank(oid, 3, 3)
        assert expectation(omega, orbit_state(t, oid)) == pytest.approx(writhe(rep), abs=1e-12)


def test_orbit_states_fixed_by_generators():
    t = decompose(3, 3)
    units = [unitary_of_move(mv) for mv in generate_moves(3, 3)]
    for oid in t.representatives.tolist()[:20]:
        psi = orbit_state(t, oid)
        assert all(apply_unitary(u, psi) == psi for u in units)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_invariant_expectation_unchanged_by_ambient_unitaries(seed):
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=125) + 1j * rng.normal(size=125)
    psi = QuantumState(amps / np.linalg.norm(amps), 3, 3)
    omega = build_observable(writhe, 3, 3)
    moves = generate_moves(3, 3)
    u = unitary_of_move(moves[rng.integers(len(moves))])
    moved = apply_unitary(u, psi)
    assert sorted(np.abs(moved.amplitudes) ** 2) == sorted(np.abs(psi.amplitudes) ** 2)
    assert expectation(omega, moved) == pytest.approx(expectation(omega, psi), abs=1e-12)


def test_sampling_basis_state():
    hist = measure_sample(basis_state(m("1,-1", 2)), 500, seed=3)
    assert hist == {"1,-1": 500}


def test_sampling_deterministic():
    psi = superposition([(m("0,0", 2), 1), (m("1,1", 2), 1)])
    a = sample_indices(psi, 1000, 42)
    assert np.array_equal(a, sample_indices(psi, 1000, 42))
    assert not np.array_equal(a, sample_indices(psi, 1000, 43))
    # the first k shots do not depend on how many shots follow
    assert np.array_equal(sample_indices(psi, 100, 42), a[:100])
    with pytest.raises(ContractError):
        sample_indices(psi, 0, 1)


def test_sampling_frequencies():
    psi = superposition([(m("0,0", 2), 1), (m("1,1", 2), 1)])
    hist = measure_sample(psi, 10_000, seed=2026)
    assert set(hist) == {"0,0", "1,1"}
    for count in hist.values():
        assert 0.48 <= count / 10_000 <= 0.52


def test_hilbert_inject():
    assert hilbert_inject(basis_state(m("1", 3))) == basis_state(m("1,0", 3))
    psi = superposition([(m("1,-1", 3), 1), (m("2,2", 3), 1j)])
    lifted = hilbert_inject(psi)
    assert lifted.norm() == pytest.approx(psi.norm(), abs=1e-15)
    assert lifted.system == (3, 3)


def test_hilbert_inject_naturality_3_2():
    for mv in generate_moves(3, 2):
        u = unitary_of_move(mv)
        lifted = unitary_of_move(mv.lifted())
        assert inject_unitary(u) == lifted
        for beta in enumerate_mosaics(3, 2):
            psi = basis_state(beta)
            assert hilbert_inject(apply_unitary(u, psi)) == apply_unitary(lifted, hilbert_inject(psi))


def test_state_triples_roundtrip():
    psi = superposition([(m("1,-1", 3), 0.6), (m("2,2", 3), 0.8j)])
    triples = psi.to_triples()
    assert triples == [("1,-1", pytest.approx(0.6), 0.0), ("2,2", 0.0, pytest.approx(0.8))]
    assert QuantumState.from_triples(triples, 3, 2) == psi


def test_same_type_quantum():
    t = decompose(2, 2)
    assert same_type_quantum(basis_state(m("1,-1", 2)), basis_state(m("0,0", 2)), t)
    assert not same_type_quantum(basis_state(m("1,1", 2)), basis_state(m("0,0", 2)), t)
    o = orbit_state(t, t.orbit_id(m("0,0", 2)))
    assert same_type_quantum(o, o, t)
    assert not same_type_quantum(o, basis_state(m("0,0", 2)), t)
    with pytest.raises(ContractError):
        same_type_quantum(superposition([(m("1,1", 2), 1), (m("0,0", 2), 1)]), o, t)
