#!/usr/bin/env python3
"""
Dense complex linear algebra for the small operators used throughout hamsim:
Hermitian eigendecomposition, matrix exponential, proper-rotation SVD of real
3x3 matrices and the SU(2) <-> SO(3) correspondence.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
import scipy.linalg

from .config import Config
from .errors import DimensionMismatchError, NotHermitianError, NotSpecialOrthogonalError

logger = logging.getLogger(__name__)

CMat = np.ndarray

IDENTITY2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (IDENTITY2, SIGMA_X, SIGMA_Y, SIGMA_Z)


def as_cmat(data, name: str = "matrix") -> CMat:
    """Coerce to a finite, square complex array"""
    m = np.asarray(data, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"{name} must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DimensionMismatchError(f"{name} has non-finite entries")
    return m


def dagger(m: CMat) -> CMat:
    return m.conj().T


def hermiticity_defect(m: CMat) -> float:
    return float(np.max(np.abs(m - dagger(m)))) if m.size else 0.0


def is_hermitian(m: CMat, tol: float = Config.HERMITIAN_TOL) -> bool:
    return hermiticity_defect(m) <= tol


def is_unitary(m: CMat, tol: float = Config.ORTHOGONALITY_TOL) -> bool:
    return frobenius(m @ dagger(m) - np.eye(m.shape[0])) <= tol


def require_hermitian(m: CMat, name: str = "matrix") -> CMat:
    m = as_cmat(m, name)
    defect = hermiticity_defect(m)
    if defect > Config.HERMITIAN_TOL:
        raise NotHermitianError(f"{name} is not Hermitian (max |m - m^dagger| = {defect:.3e})")
    return m


def frobenius(m: CMat) -> float:
    return float(np.linalg.norm(m, 'fro'))


def operator_norm(m: CMat) -> float:
    """Largest singular value"""
    return float(np.linalg.norm(m, 2))


def herm_eig(m: CMat) -> Tuple[np.ndarray, CMat]:
    """Eigenvalues in decreasing order with matching unitary eigenvector columns"""
    m = require_hermitian(m)
    values, vectors = scipy.linalg.eigh(m)
    return values[::-1].copy(), vectors[:, ::-1].copy()


def expm(m: CMat, scale: float = 1.0) -> CMat:
    """exp(-i * scale * m); spectral for Hermitian m, scaling-and-squaring otherwise"""
    m = as_cmat(m)
    if is_hermitian(m):
        values, vectors = scipy.linalg.eigh(m)
        phases = np.exp(-1j * scale * values)
        return (vectors * phases) @ dagger(vectors)
    return scipy.linalg.expm(-1j * scale * m)


def partial_trace(m: CMat, dims: Sequence[int], keep: Sequence[int]) -> CMat:
    """Trace out every tensor factor of m not listed in keep"""
    dims = list(dims)
    total = int(np.prod(dims))
    if m.shape != (total, total):
        raise DimensionMismatchError(f"operator of shape {m.shape} does not match factor dims {dims}")

    tensor = m.reshape(dims + dims)
    for axis in sorted(set(range(len(dims))) - set(keep), reverse=True):
        tensor = np.trace(tensor, axis1=axis, axis2=axis + tensor.ndim // 2)

    kept = int(np.prod([dims[k] for k in sorted(keep)])) if keep else 1
    return tensor.reshape(kept, kept)


@dataclass(frozen=True, eq=False)
class Rot3:
    """A proper rotation of R^3"""

    entries: np.ndarray

    def __post_init__(self):
        r = np.array(self.entries, dtype=float)
        if r.shape != (3, 3) or not np.all(np.isfinite(r)):
            raise NotSpecialOrthogonalError(f"rotation must be a finite 3x3 matrix, got shape {r.shape}")
        if np.max(np.abs(r.T @ r - np.eye(3))) > Config.ORTHOGONALITY_TOL * 10:
            raise NotSpecialOrthogonalError("matrix is not orthogonal")
        det = np.linalg.det(r)
        if abs(det - 1.0) > Config.ORTHOGONALITY_TOL * 10:
            raise NotSpecialOrthogonalError(f"rotation determinant is {det:.6f}, not +1")
        r.setflags(write=False)
        object.__setattr__(self, 'entries', r)

    @property
    def T(self) -> np.ndarray:
        return self.entries.T


def svd3(m) -> Tuple[Rot3, np.ndarray, Rot3]:
    """m = o1 diag(d) o2^T with proper rotations and d1 >= d2 >= |d3|"""
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3):
        raise DimensionMismatchError(f"svd3 expects a 3x3 matrix, got shape {m.shape}")

    u, d, vt = np.linalg.svd(m)
    o1, o2 = u.copy(), vt.T.copy()
    d = d.copy()

    # keep both factors in SO(3); the leftover sign lands on the smallest value
    if np.linalg.det(o1) < 0:
        o1[:, 2] *= -1
        d[2] *= -1
    if np.linalg.det(o2) < 0:
        o2[:, 2] *= -1
        d[2] *= -1

    return Rot3(o1), d, Rot3(o2)


def _quaternion_from_rotation(r: np.ndarray) -> np.ndarray:
    trace = np.trace(r)
    branch = int(np.argmax([trace, r[0, 0], r[1, 1], r[2, 2]]))

    if branch == 0:
        q0 = 0.5 * np.sqrt(max(0.0, 1 + trace))
        q = [q0, (r[2, 1] - r[1, 2]) / (4 * q0), (r[0, 2] - r[2, 0]) / (4 * q0), (r[1, 0] - r[0, 1]) / (4 * q0)]
    elif branch == 1:
        q1 = 0.5 * np.sqrt(max(0.0, 1 + r[0, 0] - r[1, 1] - r[2, 2]))
        q = [(r[2, 1] - r[1, 2]) / (4 * q1), q1, (r[0, 1] + r[1, 0]) / (4 * q1), (r[0, 2] + r[2, 0]) / (4 * q1)]
    elif branch == 2:
        q2 = 0.5 * np.sqrt(max(0.0, 1 - r[0, 0] + r[1, 1] - r[2, 2]))
        q = [(r[0, 2] - r[2, 0]) / (4 * q2), (r[0, 1] + r[1, 0]) / (4 * q2), q2, (r[1, 2] + r[2, 1]) / (4 * q2)]
    else:
        q3 = 0.5 * np.sqrt(max(0.0, 1 - r[0, 0] - r[1, 1] + r[2, 2]))
        q = [(r[1, 0] - r[0, 1]) / (4 * q3), (r[0, 2] + r[2, 0]) / (4 * q3), (r[1, 2] + r[2, 1]) / (4 * q3), q3]

    q = np.array(q, dtype=float)
    return q / np.linalg.norm(q)


def so3_to_su2(r) -> CMat:
    """Lift a proper rotation to u with u sigma_i u^dagger = sum_j r_ji sigma_j"""
    if not isinstance(r, Rot3):
        r = Rot3(r)
    q0, q1, q2, q3 = _quaternion_from_rotation(r.entries)
    u = q0 * IDENTITY2 - 1j * (q1 * SIGMA_X + q2 * SIGMA_Y + q3 * SIGMA_Z)

    # fix the global sign: first nonzero entry gets a nonnegative real part
    for entry in u.flat:
        if abs(entry) > Config.ORTHOGONALITY_TOL:
            if entry.real < 0:
                u = -u
            break
    return u


def su2_to_so3(u: CMat) -> Rot3:
    """Adjoint action of a one-qubit unitary on the Pauli vector"""
    u = as_cmat(u, "one-qubit unitary")
    r = np.zeros((3, 3))
    for i in range(3):
        rotated = u @ PAULIS[i + 1] @ dagger(u)
        for j in range(3):
            r[j, i] = 0.5 * np.real(np.trace(PAULIS[j + 1] @ rotated))
    return Rot3(r)


def kron_all(factors: List[CMat]) -> CMat:
    result = np.eye(1, dtype=complex)
    for factor in factors:
        result = np.kron(result, factor)
    return result
