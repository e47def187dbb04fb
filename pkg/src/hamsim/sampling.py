#!/usr/bin/env python3
"""
Seeded random instances for the certification sweep and the property tests
"""

import logging

import numpy as np
from scipy.stats import special_ortho_group, unitary_group

from .matcore import CMat, Rot3
from .pauli_ham import BellSpectrum, PauliHamiltonian, from_matrix, lambda_from_h

logger = logging.getLogger(__name__)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_canonical_h(rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """h1 >= h2 >= |h3| with a random sign on h3"""
    magnitudes = np.sort(np.abs(rng.normal(scale=scale, size=3)))[::-1]
    sign = 1.0 if rng.random() < 0.5 else -1.0
    return np.array([magnitudes[0], magnitudes[1], sign * magnitudes[2]])


def random_spectrum(rng: np.random.Generator) -> BellSpectrum:
    return lambda_from_h(random_canonical_h(rng))


def random_hermitian(rng: np.random.Generator, dim: int = 4) -> CMat:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (a + a.conj().T)


def random_unitary(rng: np.random.Generator, dim: int = 2) -> CMat:
    if dim == 1:
        return np.exp(2j * np.pi * rng.random()) * np.eye(1, dtype=complex)
    return unitary_group.rvs(dim, random_state=rng)


def random_rotation(rng: np.random.Generator) -> Rot3:
    return Rot3(special_ortho_group.rvs(3, random_state=rng))


def random_pauli_hamiltonian(rng: np.random.Generator) -> PauliHamiltonian:
    return from_matrix(random_hermitian(rng, 4))


def random_interior_point(rng: np.random.Generator, lam: BellSpectrum, weights: int = 6) -> np.ndarray:
    """A strictly positive mixture of several permuted copies of lam"""
    p = rng.dirichlet(np.ones(weights))
    perms = [rng.permutation(4) for _ in range(weights)]
    return sum(w * lam.values[perm] for w, perm in zip(p, perms))
