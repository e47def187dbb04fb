import numpy as np
import pytest

from hamsim.errors import DimensionMismatchError, MalformedSpectrumError, NotCanonicalError, NotHermitianError
from hamsim.matcore import PAULIS, SIGMA_Z, dagger
from hamsim.pauli_ham import (
    BellSpectrum,
    PauliHamiltonian,
    bell_projector_spectrum,
    canonical_matrix,
    canonicalize,
    from_matrix,
    h_from_lambda,
    is_canonical,
    lambda_from_h,
    to_matrix,
)
from hamsim.sampling import random_hermitian, random_pauli_hamiltonian, random_unitary


def test_from_matrix_zz():
    p = from_matrix(np.kron(SIGMA_Z, SIGMA_Z))
    assert p.a == pytest.approx(0)
    assert np.allclose(p.m, 0) and np.allclose(p.n, 0)
    assert np.allclose(p.h, np.diag([0, 0, 1]))


def test_from_matrix_identity():
    p = from_matrix(np.eye(4))
    assert p.a == pytest.approx(1)
    assert np.allclose(p.h, 0)


def test_from_matrix_roundtrip(rng):
    for _ in range(1000):
        m = random_hermitian(rng, 4)
        assert np.linalg.norm(to_matrix(from_matrix(m)) - m) <= 1e-10


def test_from_matrix_rejects_non_hermitian():
    m = np.zeros((4, 4))
    m[0, 1] = 1
    with pytest.raises(NotHermitianError):
        from_matrix(m)


def test_from_matrix_rejects_wrong_size():
    with pytest.raises(DimensionMismatchError):
        from_matrix(np.eye(2))


def test_to_matrix_heisenberg():
    expected = sum(np.kron(PAULIS[i], PAULIS[i]) for i in range(1, 4))
    assert np.allclose(canonical_matrix([1, 1, 1]), expected)


def test_to_matrix_zero():
    assert np.allclose(to_matrix(PauliHamiltonian()), 0)


def test_local_and_nonlocal_parts_add_up(rng):
    p = random_pauli_hamiltonian(rng)
    total = to_matrix(p.local_part()) + to_matrix(p.nonlocal_part())
    assert np.allclose(total, to_matrix(p))


def test_canonicalize_zz_rotates_to_first_axis():
    form = canonicalize(PauliHamiltonian(h=np.diag([0.0, 0.0, 1.0])))
    assert np.allclose(form.h, [1, 0, 0])
    assert np.linalg.norm(form.rebuild() - np.kron(SIGMA_Z, SIGMA_Z)) <= 1e-10


def test_canonicalize_fixed_point():
    form = canonicalize(PauliHamiltonian(h=np.diag([3.0, 2.0, 1.0])))
    assert np.allclose(form.h, [3, 2, 1])
    assert np.linalg.norm(form.rebuild() - canonical_matrix([3, 2, 1])) <= 1e-10


def test_canonicalize_keeps_sign_in_h3():
    form = canonicalize(PauliHamiltonian(h=np.diag([1.0, 1.0, -1.0])))
    assert np.allclose(form.h, [1, 1, -1])


def test_canonicalize_random_rebuilds(rng):
    for _ in range(100):
        p = random_pauli_hamiltonian(rng)
        form = canonicalize(p)
        assert is_canonical(form.h)
        assert np.linalg.norm(form.rebuild() - to_matrix(p)) <= 1e-10


@pytest.mark.parametrize("h, lam", [
    ((1, 0, 0), (1, 1, -1, -1)),
    ((1, 1, 1), (1, 1, 1, -3)),
    ((0, 0, 0), (0, 0, 0, 0)),
])
def test_lambda_from_h(h, lam):
    assert np.allclose(lambda_from_h(h).values, lam, atol=1e-14)
    assert np.allclose(h_from_lambda(BellSpectrum(lam)), h, atol=1e-14)


def test_lambda_from_h_rejects_non_canonical():
    with pytest.raises(NotCanonicalError):
        lambda_from_h((0, 1, 0))


def test_h_from_lambda_inverts_random(rng):
    for _ in range(200):
        lam = np.sort(rng.normal(size=4))[::-1]
        lam -= lam.mean()
        lam = np.sort(lam)[::-1]
        h = h_from_lambda(BellSpectrum(lam))
        assert is_canonical(h)
        assert np.allclose(lambda_from_h(h).values, lam, atol=1e-12)


def test_bell_spectrum_validation():
    with pytest.raises(MalformedSpectrumError):
        BellSpectrum([1, 2, -1, -2])
    with pytest.raises(MalformedSpectrumError):
        BellSpectrum([1, 0, 0, 0])


@pytest.mark.parametrize("h, lam", [
    ((1, 1, 1), (1, 1, 1, -3)),
    ((0, 0, 0), (0, 0, 0, 0)),
    ((1, 0, 0), (1, 1, -1, -1)),
])
def test_bell_projector_spectrum(h, lam):
    assert np.allclose(bell_projector_spectrum(canonical_matrix(h)).values, lam)


def test_bell_projector_spectrum_agrees_with_formula(rng):
    from hamsim.sampling import random_canonical_h

    for _ in range(50):
        h = random_canonical_h(rng)
        assert np.allclose(bell_projector_spectrum(canonical_matrix(h)).values, lambda_from_h(h).values)


def test_bell_projector_spectrum_rejects_local_terms():
    m = canonical_matrix([1, 0, 0]) + np.kron(SIGMA_Z, np.eye(2))
    with pytest.raises(NotCanonicalError):
        bell_projector_spectrum(m)


def test_pauli_hamiltonian_to_json_shape():
    payload = PauliHamiltonian(a=1.0).to_json()
    assert payload['a'] == 1.0
    assert len(payload['h']) == 3


def test_canonical_form_frames_are_unitary(rng):
    form = canonicalize(random_pauli_hamiltonian(rng))
    for u in (form.u, form.v):
        assert np.allclose(u @ dagger(u), np.eye(2))


def test_pauli_hamiltonian_json_preserves_operator(rng):
    p = random_pauli_hamiltonian(rng)
    assert np.allclose(to_matrix(PauliHamiltonian.from_json(p.to_json())), to_matrix(p))


def test_canonicalize_is_invariant_under_local_unitaries(rng):
    for _ in range(500):
        m = random_hermitian(rng, 4)
        w = np.kron(random_unitary(rng, 2), random_unitary(rng, 2))
        before = canonicalize(from_matrix(m)).h
        after = canonicalize(from_matrix(w @ m @ dagger(w))).h
        assert np.max(np.abs(before - after)) <= 1e-9
