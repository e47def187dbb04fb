import numpy as np
import pytest

from hamsim.errors import DimensionMismatchError, FactorExceededError, InputValidationError, SimulationImpossibleError
from hamsim.matcore import IDENTITY2, SIGMA_X, dagger, frobenius
from hamsim.pauli_ham import CanonicalForm, canonical_matrix, to_matrix
from hamsim.protocol import (
    GENERATORS,
    IDENTITY_PAIR,
    OPPOSITE_SIGN_Z_PAIR,
    AncillaConjugation,
    LocalUnitaryPair,
    bell_basis,
    bell_projectors,
    build_permutation_table,
    build_twirl,
    dressed_residual,
    gate_time_bound,
    inverse_permutation,
    luanc_conjugate,
    permutation_word,
    realized_permutation,
    reconstruct,
    synthesize,
    synthesize_for,
    verify_twirl,
)
from hamsim.sampling import random_canonical_h, random_hermitian, random_pauli_hamiltonian, random_unitary
from hamsim.separations import example2_unitary


def test_bell_basis_is_orthonormal_and_maximally_entangled():
    basis = bell_basis()
    assert basis.is_orthonormal()
    assert basis.is_maximally_entangled()


def test_bell_projectors_resolve_identity():
    assert np.allclose(sum(bell_projectors()), np.eye(4))


@pytest.mark.parametrize("transposition", sorted(GENERATORS))
def test_generators_swap_adjacent_labels(transposition):
    expected = list(range(4))
    expected[transposition[0]], expected[transposition[1]] = transposition[1], transposition[0]
    assert realized_permutation(GENERATORS[transposition]) == tuple(expected)


def test_first_generator_matches_pauli_x_pair():
    pair = GENERATORS[(0, 1)]
    expected = (IDENTITY2 - 1j * SIGMA_X) / np.sqrt(2)
    assert np.allclose(pair.u, expected) and np.allclose(pair.v, expected)


def test_opposite_sign_z_pair_exchanges_outer_labels():
    assert realized_permutation(OPPOSITE_SIGN_Z_PAIR) == (3, 1, 2, 0)


def test_permutation_table_covers_all_permutations():
    table = build_permutation_table()
    projectors = bell_projectors()
    assert len(table) == 24
    for sigma, pair in table.items():
        w = pair.operator()
        for i in range(4):
            assert frobenius(w @ projectors[i] @ dagger(w) - projectors[sigma[i]]) <= 1e-12


def test_identity_permutation_is_identity_pair():
    pair = build_permutation_table()[(0, 1, 2, 3)]
    assert np.allclose(pair.operator(), np.eye(4))


def test_four_cycle_word_has_three_generators():
    cycle = (1, 2, 3, 0)
    assert len(permutation_word(cycle)) == 3
    assert realized_permutation(build_permutation_table()[cycle]) == cycle


def test_inverse_permutation():
    perm = (2, 0, 3, 1)
    inverse = inverse_permutation(perm)
    assert tuple(perm[i] for i in inverse) == (0, 1, 2, 3)


def test_local_unitary_pair_rejects_non_unitary():
    with pytest.raises(InputValidationError):
        LocalUnitaryPair(2 * IDENTITY2, IDENTITY2)


def test_synthesize_self_simulation_is_identity(heisenberg):
    protocol = synthesize(heisenberg, heisenberg, 1.0)
    assert len(protocol) == 1
    p, pair = protocol.terms[0]
    assert p == pytest.approx(1.0)
    assert np.allclose(pair.operator(), np.eye(4))


def test_synthesize_ising_to_heisenberg(ising, heisenberg):
    protocol = synthesize(ising, heisenberg)
    assert protocol.s == pytest.approx(1 / 3)
    assert len(protocol) <= 3
    residual = frobenius(reconstruct(protocol, canonical_matrix((1, 0, 0))) - canonical_matrix((1, 1, 1)) / 3)
    assert residual <= 1e-9


def test_synthesize_heisenberg_to_ising(ising, heisenberg):
    protocol = synthesize(heisenberg, ising, 1.0)
    residual = frobenius(reconstruct(protocol, canonical_matrix((1, 1, 1))) - canonical_matrix((1, 0, 0)))
    assert residual <= 1e-9


def test_synthesize_below_optimum(ising, heisenberg):
    protocol = synthesize(ising, heisenberg, 0.2)
    residual = frobenius(reconstruct(protocol, canonical_matrix((1, 0, 0))) - 0.2 * canonical_matrix((1, 1, 1)))
    assert residual <= 1e-9


def test_synthesize_above_optimum_is_refused(ising, heisenberg):
    with pytest.raises(FactorExceededError) as excinfo:
        synthesize(ising, heisenberg, 0.5)
    assert excinfo.value.optimum == pytest.approx(1 / 3)


def test_synthesize_random_pairs_reconstruct(rng):
    for _ in range(500):
        h_source, h_target = random_canonical_h(rng), random_canonical_h(rng)
        protocol = synthesize(CanonicalForm.from_h(h_source), CanonicalForm.from_h(h_target))
        assert len(protocol.terms) <= 3
        assert np.sum(protocol.weights) == pytest.approx(1.0)
        simulated = reconstruct(protocol, canonical_matrix(h_source))
        assert frobenius(simulated - protocol.s * canonical_matrix(h_target)) <= 1e-9


def test_synthesize_below_optimum_random_pairs(rng):
    for _ in range(300):
        h_source, h_target = random_canonical_h(rng), random_canonical_h(rng)
        source, target = CanonicalForm.from_h(h_source), CanonicalForm.from_h(h_target)
        s = rng.uniform(0.1, 0.9) * synthesize(source, target).s
        protocol = synthesize(source, target, s)
        assert len(protocol.terms) <= 4
        simulated = reconstruct(protocol, canonical_matrix(h_source))
        assert frobenius(simulated - s * canonical_matrix(h_target)) <= 1e-9


@pytest.mark.parametrize("h_source, h_target", [
    ((0.643, 0.328, 0.075), (1.044, 0.892, 0.312)),
    ((1.147, 1.147, -0.097), (0.356, 0.356, -0.030)),
])
def test_synthesize_pairs_with_near_tight_residuals(h_source, h_target):
    protocol = synthesize(CanonicalForm.from_h(h_source), CanonicalForm.from_h(h_target))
    assert len(protocol.terms) <= 3
    simulated = reconstruct(protocol, canonical_matrix(h_source))
    assert frobenius(simulated - protocol.s * canonical_matrix(h_target)) <= 1e-9


def test_reconstruct_identity_term_leaves_h_unchanged(rng):
    from hamsim.protocol import SimulationProtocol

    H = random_hermitian(rng, 4)
    protocol = SimulationProtocol(terms=((1.0, IDENTITY_PAIR),), s=1.0, target_h=np.zeros(3), source_h=np.zeros(3))
    assert np.allclose(reconstruct(protocol, H), H)


def test_synthesize_for_non_canonical_pair(dressed_pair):
    source, target = dressed_pair
    dressed = synthesize_for(source, target)
    assert np.allclose(dressed.local_correction.h, 0)
    assert dressed_residual(dressed, to_matrix(source), to_matrix(target)) <= 1e-9


def test_synthesize_for_random_hamiltonians(rng):
    for _ in range(50):
        source, target = random_pauli_hamiltonian(rng), random_pauli_hamiltonian(rng)
        dressed = synthesize_for(source, target)
        assert dressed_residual(dressed, to_matrix(source), to_matrix(target)) <= 1e-9


def test_gate_time_bound(ising, heisenberg):
    assert gate_time_bound(heisenberg, heisenberg, 5.0) == pytest.approx(5.0)
    assert gate_time_bound(heisenberg, ising, 1.0) == pytest.approx(3.0)
    assert gate_time_bound(CanonicalForm.from_h((0, 0, 0)), ising, 7.0) == 0.0


def test_gate_time_bound_from_zero_source(ising):
    with pytest.raises(SimulationImpossibleError):
        gate_time_bound(ising, CanonicalForm.from_h((0, 0, 0)), 1.0)


def test_luanc_identity_conjugation_leaves_h_unchanged(rng):
    H = random_hermitian(rng, 4)
    conj = AncillaConjugation(U=np.eye(4), V=np.eye(2), d_a_anc=2, d_b_anc=1)
    assert np.allclose(luanc_conjugate(H, conj), H)


def test_luanc_without_ancillas_is_plain_conjugation(rng):
    for _ in range(50):
        u, v, H = random_unitary(rng, 2), random_unitary(rng, 2), random_hermitian(rng, 4)
        w = np.kron(u, v)
        conj = AncillaConjugation(U=u, V=v)
        assert np.linalg.norm(luanc_conjugate(H, conj) - w @ H @ dagger(w)) <= 1e-12


def test_luanc_is_linear_and_hermitian(rng):
    for _ in range(100):
        d_a_anc, d_b_anc = (int(x) for x in rng.integers(1, 4, size=2))
        conj = AncillaConjugation(
            U=random_unitary(rng, 2 * d_a_anc),
            V=random_unitary(rng, 2 * d_b_anc),
            d_a_anc=d_a_anc,
            d_b_anc=d_b_anc,
        )
        H1, H2 = random_hermitian(rng, 4), random_hermitian(rng, 4)
        a, b = rng.normal(size=2)
        combined = luanc_conjugate(a * H1 + b * H2, conj)
        expected = a * luanc_conjugate(H1, conj) + b * luanc_conjugate(H2, conj)
        assert np.linalg.norm(combined - expected) <= 1e-10
        assert np.linalg.norm(combined - dagger(combined)) <= 1e-12


def test_luanc_rejects_wrong_system_size(rng):
    conj = AncillaConjugation(U=np.eye(4), V=np.eye(4), d_a_anc=2, d_b_anc=2)
    with pytest.raises(DimensionMismatchError):
        luanc_conjugate(random_hermitian(rng, 8), conj)


def test_ancilla_dimension_must_divide():
    with pytest.raises(DimensionMismatchError):
        AncillaConjugation(U=np.eye(6), V=np.eye(2), d_a_anc=4)


def test_twirl_without_ancillas_is_single_term(rng):
    U, V = random_unitary(rng, 2), random_unitary(rng, 2)
    ensemble = build_twirl(AncillaConjugation(U=U, V=V))
    assert len(ensemble) == 1
    p, u0, v0 = ensemble.terms[0]
    assert p == 1.0
    assert np.allclose(u0, U) and np.allclose(v0, V)


def test_twirl_phase_diagonals_for_qubit_ancilla(rng):
    U = random_unitary(rng, 4)
    ensemble = build_twirl(AncillaConjugation(U=U, V=np.eye(2), d_a_anc=2, d_b_anc=1))
    assert len(ensemble) == 2
    assert all(p == pytest.approx(0.5) for p, _, _ in ensemble.terms)
    assert np.allclose(ensemble.terms[0][1], U)
    assert np.allclose(ensemble.terms[1][1], np.kron(np.eye(2), np.diag([1, -1])) @ U)


def test_verify_twirl_identity(rng):
    conj = AncillaConjugation(U=np.eye(4), V=np.eye(4), d_a_anc=2, d_b_anc=2)
    assert verify_twirl(conj, random_hermitian(rng, 4)) <= 1e-12


def test_verify_twirl_random(rng):
    for _ in range(100):
        d_a_anc, d_b_anc = (int(x) for x in rng.integers(1, 4, size=2))
        conj = AncillaConjugation(
            U=random_unitary(rng, 2 * d_a_anc),
            V=random_unitary(rng, 2 * d_b_anc),
            d_a_anc=d_a_anc,
            d_b_anc=d_b_anc,
        )
        assert verify_twirl(conj, random_hermitian(rng, 4)) <= 1e-10


def test_verify_twirl_three_qubit_construction():
    from hamsim.matcore import SIGMA_Z, kron_all

    conj = AncillaConjugation(U=example2_unitary(), V=np.eye(4), d_a_anc=2, d_b_anc=1)
    assert verify_twirl(conj, kron_all([SIGMA_Z, SIGMA_Z, SIGMA_Z])) <= 1e-10
