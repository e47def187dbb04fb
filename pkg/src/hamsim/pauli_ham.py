#!/usr/bin/env python3
"""
Two-qubit Hamiltonians in the Pauli coefficient basis, their canonical form
sum_i h_i sigma_i x sigma_i with h1 >= h2 >= |h3|, and the Bell-basis spectrum
of that canonical form.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Sequence

import numpy as np

from .config import Config
from .errors import DimensionMismatchError, MalformedSpectrumError, NotCanonicalError, UnrealizableSpectrumError
from .matcore import CMat, PAULIS, dagger, require_hermitian, so3_to_su2, svd3

logger = logging.getLogger(__name__)

_SQ = 1 / np.sqrt(2)

# Columns are the maximally entangled basis Phi_1..Phi_4 in the |00>,|01>,|10>,|11> order
BELL_VECTORS = np.array([
    [0, _SQ, _SQ, 0],
    [_SQ, 0, 0, _SQ],
    [_SQ, 0, 0, -_SQ],
    [0, _SQ, -_SQ, 0],
], dtype=complex).T


def _real_vector(values, length: int, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float).reshape(-1)
    if arr.shape != (length,) or not np.all(np.isfinite(arr)):
        raise DimensionMismatchError(f"{name} must be {length} finite reals, got {values!r}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PauliHamiltonian:
    """a I + sum_i m_i sigma_i x I + sum_j n_j I x sigma_j + sum_ij h_ij sigma_i x sigma_j"""

    a: float = 0.0
    m: np.ndarray = None
    n: np.ndarray = None
    h: np.ndarray = None

    def __post_init__(self):
        if not np.isfinite(self.a):
            raise DimensionMismatchError("identity coefficient must be finite")
        object.__setattr__(self, 'a', float(self.a))
        object.__setattr__(self, 'm', _real_vector(np.zeros(3) if self.m is None else self.m, 3, "m"))
        object.__setattr__(self, 'n', _real_vector(np.zeros(3) if self.n is None else self.n, 3, "n"))
        h = _real_vector(np.zeros(9) if self.h is None else np.asarray(self.h, dtype=float).reshape(-1), 9, "h")
        object.__setattr__(self, 'h', h.reshape(3, 3))

    def local_part(self) -> 'PauliHamiltonian':
        return PauliHamiltonian(a=self.a, m=self.m, n=self.n)

    def nonlocal_part(self) -> 'PauliHamiltonian':
        return PauliHamiltonian(h=self.h)

    @classmethod
    def from_json(cls, payload: Dict[str, Any]) -> 'PauliHamiltonian':
        return cls(a=payload.get('a', 0.0), m=payload.get('m'), n=payload.get('n'), h=payload.get('h'))

    def to_json(self) -> Dict[str, Any]:
        return {
            'a': self.a,
            'm': self.m.tolist(),
            'n': self.n.tolist(),
            'h': self.h.tolist(),
        }


def from_matrix(m: CMat) -> PauliHamiltonian:
    """Expand a Hermitian 4x4 operator on the 16 Pauli products"""
    m = require_hermitian(m, "two-qubit Hamiltonian")
    if m.shape != (4, 4):
        raise DimensionMismatchError(f"two-qubit Hamiltonian must be 4x4, got {m.shape}")

    coeffs = np.zeros((4, 4))
    for i in range(4):
        for j in range(4):
            coeffs[i, j] = np.real(np.trace(np.kron(PAULIS[i], PAULIS[j]) @ m)) / 4

    return PauliHamiltonian(a=coeffs[0, 0], m=coeffs[1:, 0], n=coeffs[0, 1:], h=coeffs[1:, 1:])


def to_matrix(p: PauliHamiltonian) -> CMat:
    result = p.a * np.eye(4, dtype=complex)
    for i in range(3):
        result += p.m[i] * np.kron(PAULIS[i + 1], PAULIS[0])
        result += p.n[i] * np.kron(PAULIS[0], PAULIS[i + 1])
        for j in range(3):
            result += p.h[i, j] * np.kron(PAULIS[i + 1], PAULIS[j + 1])
    return result


def canonical_matrix(h: Sequence[float]) -> CMat:
    """sum_i h_i sigma_i x sigma_i"""
    return to_matrix(PauliHamiltonian(h=np.diag(np.asarray(h, dtype=float))))


def is_canonical(h: Sequence[float], tol: float = Config.SPECTRUM_TOL) -> bool:
    h1, h2, h3 = (float(x) for x in h)
    return h1 >= h2 - tol and h2 >= abs(h3) - tol


def require_canonical(h: Sequence[float], name: str = "h") -> np.ndarray:
    vec = _real_vector(h, 3, name)
    if not is_canonical(vec):
        raise NotCanonicalError(f"{name}={vec.tolist()} violates h1 >= h2 >= |h3|")
    return vec


@dataclass(frozen=True, eq=False)
class CanonicalForm:
    """Canonical coefficients plus the local dressing that recovers the input"""

    h: np.ndarray
    u: CMat
    v: CMat
    removed_a: float
    removed_m: np.ndarray
    removed_n: np.ndarray

    @classmethod
    def from_h(cls, h: Sequence[float]) -> 'CanonicalForm':
        """An already canonical Hamiltonian, with trivial frames and no local terms"""
        vec = require_canonical(h)
        return cls(h=vec, u=np.eye(2, dtype=complex), v=np.eye(2, dtype=complex),
                   removed_a=0.0, removed_m=np.zeros(3), removed_n=np.zeros(3))

    def matrix(self) -> CMat:
        return canonical_matrix(self.h)

    def removed_locals(self) -> PauliHamiltonian:
        return PauliHamiltonian(a=self.removed_a, m=self.removed_m, n=self.removed_n)

    def rebuild(self) -> CMat:
        """(u x v) H_canon (u x v)^dagger plus the removed local terms"""
        w = np.kron(self.u, self.v)
        return w @ self.matrix() @ dagger(w) + to_matrix(self.removed_locals())


def canonicalize(p: PauliHamiltonian) -> CanonicalForm:
    o1, d, o2 = svd3(p.h)
    u = so3_to_su2(o1)
    v = so3_to_su2(o2)

    h = np.array(d, dtype=float)
    # SVD leaves -0.0 / tiny negatives on exact zeros
    h[np.abs(h) < Config.ZERO_DENOMINATOR_TOL] = 0.0
    h.setflags(write=False)

    logger.debug(f"Canonical coefficients {h.tolist()} from coupling matrix {p.h.tolist()}")
    return CanonicalForm(h=h, u=u, v=v, removed_a=p.a, removed_m=p.m, removed_n=p.n)


@dataclass(frozen=True, eq=False)
class BellSpectrum:
    """Decreasing, zero-sum eigenvalues of a canonical Hamiltonian in the Bell basis"""

    values: np.ndarray

    def __post_init__(self):
        lam = np.array(self.values, dtype=float).reshape(-1)
        if lam.shape != (4,) or not np.all(np.isfinite(lam)):
            raise MalformedSpectrumError(f"Bell spectrum needs 4 finite reals, got {self.values!r}")

        tol = Config.SPECTRUM_TOL * max(1.0, float(np.max(np.abs(lam))))
        if np.any(np.diff(lam) > tol):
            raise MalformedSpectrumError(f"Bell spectrum must be decreasing, got {lam.tolist()}")
        if abs(lam.sum()) > tol:
            raise MalformedSpectrumError(f"Bell spectrum must sum to zero, sum is {lam.sum():.3e}")

        lam.setflags(write=False)
        object.__setattr__(self, 'values', lam)

    @classmethod
    def from_h(cls, h: Sequence[float]) -> 'BellSpectrum':
        return lambda_from_h(h)

    def scaled(self, s: float) -> 'BellSpectrum':
        if s < 0:
            raise MalformedSpectrumError(f"cannot scale a spectrum by negative factor {s}")
        return BellSpectrum(s * self.values)

    def prefix_sums(self) -> np.ndarray:
        return np.cumsum(self.values)[:3]

    def is_zero(self, tol: float = Config.ZERO_DENOMINATOR_TOL) -> bool:
        return bool(np.all(np.abs(self.values) <= tol))

    def tolist(self):
        return self.values.tolist()


def lambda_from_h(h: Sequence[float]) -> BellSpectrum:
    h1, h2, h3 = require_canonical(h)
    lam = np.array([
        h1 + h2 - h3,
        h1 - h2 + h3,
        -h1 + h2 + h3,
        -h1 - h2 - h3,
    ])
    return BellSpectrum(np.sort(lam, kind='stable')[::-1])


def h_from_lambda(s: BellSpectrum) -> np.ndarray:
    l1, l2, l3, _ = s.values
    h = np.array([(l1 + l2) / 2, (l1 + l3) / 2, (l2 + l3) / 2])
    if not is_canonical(h):
        raise UnrealizableSpectrumError(f"spectrum {s.tolist()} inverts to non-canonical h={h.tolist()}")
    return h


def bell_projector_spectrum(m: CMat) -> BellSpectrum:
    """Read the Bell-basis eigenvalues off a canonical (Bell-diagonal) operator"""
    m = require_hermitian(m, "canonical Hamiltonian")
    if m.shape != (4, 4):
        raise DimensionMismatchError(f"canonical Hamiltonian must be 4x4, got {m.shape}")

    in_bell = dagger(BELL_VECTORS) @ m @ BELL_VECTORS
    off_diagonal = in_bell - np.diag(np.diag(in_bell))
    if np.max(np.abs(off_diagonal)) > Config.RECONSTRUCTION_TOL:
        raise NotCanonicalError("operator is not diagonal in the Bell basis")

    lam = np.real(np.diag(in_bell))
    return BellSpectrum(np.sort(lam)[::-1])

