"""Shared fixtures for the hamsim test suite"""

import numpy as np
import pytest

from hamsim.config import Config
from hamsim.pauli_ham import CanonicalForm, PauliHamiltonian

ISING_H = (1.0, 0.0, 0.0)
HEISENBERG_H = (1.0, 1.0, 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(Config.DEFAULT_SEED)


@pytest.fixture
def ising():
    return CanonicalForm.from_h(ISING_H)


@pytest.fixture
def heisenberg():
    return CanonicalForm.from_h(HEISENBERG_H)


@pytest.fixture
def dressed_pair():
    """A non-canonical source and target, both with local terms"""
    source = PauliHamiltonian(
        a=0.3,
        m=[0.2, -0.1, 0.4],
        n=[0.0, 0.5, -0.2],
        h=[[0.1, 0.7, 0.0], [0.3, -0.2, 0.1], [0.0, 0.4, 0.9]],
    )
    target = PauliHamiltonian(
        m=[0.1, 0.0, -0.3],
        n=[0.2, 0.2, 0.0],
        h=[[0.5, 0.0, 0.1], [0.0, 0.2, 0.0], [0.2, 0.0, -0.1]],
    )
    return source, target
