#!/usr/bin/env python3
"""
Constructions where local unitaries assisted by local ancillas simulate a
Hamiltonian that local unitaries alone cannot, with the computable part of
each impossibility argument checked numerically.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List

import numpy as np

from .config import Config
from .errors import DomainError, InputValidationError
from .matcore import IDENTITY2, SIGMA_Z, CMat, dagger, frobenius, kron_all, partial_trace
from .protocol import AncillaConjugation, luanc_conjugate

logger = logging.getLogger(__name__)

CERTIFICATE_KIND = "witness certified"


def _projector(i: int, d: int) -> CMat:
    p = np.zeros((d, d), dtype=complex)
    p[i, i] = 1
    return p


def _basis_row(index: int, dim: int) -> np.ndarray:
    row = np.zeros(dim, dtype=complex)
    row[index] = 1
    return row


@dataclass(frozen=True, eq=False)
class DLevelPair:
    d: int
    K: CMat
    K_prime: CMat


def build_dlevel_pair(d: int) -> DLevelPair:
    """K = P0 x P0 + sum_{i>=1} Pi x Pi and K' = P0 x P1 + sum_{i>=1} Pi x Pi"""
    tail = sum(np.kron(_projector(i, d), _projector(i, d)) for i in range(1, d))
    K = np.kron(_projector(0, d), _projector(0, d)) + tail
    K_prime = np.kron(_projector(0, d), _projector(1, d)) + tail
    return DLevelPair(d=d, K=K, K_prime=K_prime)


def isometry_defect(rows: np.ndarray) -> float:
    return frobenius(rows @ dagger(rows) - np.eye(rows.shape[0]))


def complete_unitary(specified: Dict[int, np.ndarray], dim: int) -> CMat:
    """Fill the unspecified rows by Gram-Schmidt over the standard basis in index order"""
    rows = np.array([specified[k] for k in sorted(specified)], dtype=complex)
    if isometry_defect(rows) > Config.ORTHOGONALITY_TOL:
        raise DomainError("specified rows are not orthonormal")

    # orthonormal kets spanning the specified rows
    kets: List[np.ndarray] = [row.conj() for row in rows]
    extra: List[np.ndarray] = []
    for k in range(dim):
        if len(kets) == dim:
            break
        candidate = _basis_row(k, dim)
        for ket in kets:
            candidate = candidate - np.vdot(ket, candidate) * ket
        norm = np.linalg.norm(candidate)
        if norm > 1e-8:
            candidate = candidate / norm
            kets.append(candidate)
            extra.append(candidate.conj())

    U = np.zeros((dim, dim), dtype=complex)
    free_rows = [k for k in range(dim) if k not in specified]
    for k, row in specified.items():
        U[k] = row
    for k, row in zip(free_rows, extra):
        U[k] = row
    return U


@dataclass(frozen=True, eq=False)
class WitnessReport:
    d: int
    achieved: bool
    conjugation_residual: float
    isometry_defect: float
    unitarity_defect: float
    forced_a: float
    forced_m: CMat
    forced_n: CMat
    witness_value: float
    certificate: str = CERTIFICATE_KIND

    @property
    def separation_certified(self) -> bool:
        return self.achieved and self.witness_value < 0


def example1_unitary(d: int) -> CMat:
    """U on A x A' whose <0_A'| slice is |0><1 0| + sum_{i>=1} |i><i i|"""
    dim = d * d
    specified = {0 * d + 0: _basis_row(1 * d + 0, dim)}
    for i in range(1, d):
        specified[i * d + 0] = _basis_row(i * d + i, dim)
    return complete_unitary(specified, dim)


def example1(d: int) -> WitnessReport:
    if d < 3:
        raise InputValidationError(f"the d-level construction needs d >= 3, got d={d}")

    pair = build_dlevel_pair(d)
    U = example1_unitary(d)
    slice_rows = U[[i * d for i in range(d)]]
    conj = AncillaConjugation(U=U, V=np.eye(d), d_a_anc=d, d_b_anc=1)

    simulated = luanc_conjugate(pair.K, conj)
    residual = float(np.max(np.abs(simulated - pair.K_prime)))

    # a local-unitary mixing Q of K keeps its partial traces, which are identities here
    dims = [d, d]
    reduced_a = partial_trace(pair.K, dims, keep=[0])
    reduced_b = partial_trace(pair.K, dims, keep=[1])
    if frobenius(reduced_a - np.eye(d)) > Config.RECONSTRUCTION_TOL or frobenius(reduced_b - np.eye(d)) > Config.RECONSTRUCTION_TOL:
        raise DomainError("K does not have maximally mixed marginals; witness chain does not apply")

    forced_a = float(np.real(np.trace(pair.K_prime) - np.trace(pair.K))) / (d * d)
    forced_m = (partial_trace(pair.K_prime, dims, keep=[0]) - reduced_a - forced_a * d * np.eye(d)) / d
    forced_n = (partial_trace(pair.K_prime, dims, keep=[1]) - reduced_b - forced_a * d * np.eye(d)) / d

    locals_removed = pair.K_prime - np.kron(forced_m, np.eye(d)) - np.kron(np.eye(d), forced_n) - forced_a * np.eye(d * d)
    probe = np.kron(_projector(2, d), _projector(1, d))
    witness = float(np.real(np.trace(probe @ locals_removed)))

    report = WitnessReport(
        d=d,
        achieved=residual <= Config.RECONSTRUCTION_TOL,
        conjugation_residual=residual,
        isometry_defect=isometry_defect(slice_rows),
        unitarity_defect=frobenius(U @ dagger(U) - np.eye(d * d)),
        forced_a=forced_a,
        forced_m=forced_m,
        forced_n=forced_n,
        witness_value=witness,
    )
    logger.info(f"d={d}: ancilla simulation residual {residual:.3e}, witness {witness:.6f}")
    return report


@dataclass(frozen=True, eq=False)
class TraceWitnessReport:
    achieved: bool
    slice_identity_residual: float
    conjugation_residual: float
    source_slice_trace: float
    target_slice_trace: float
    certificate: str = CERTIFICATE_KIND

    @property
    def separation_certified(self) -> bool:
        return self.achieved and abs(self.source_slice_trace - self.target_slice_trace) > Config.RECONSTRUCTION_TOL


def example2_unitary() -> CMat:
    """U on A x A' whose <0_A'| slice is |0><0| x <0| + |1><0| x <1|"""
    specified = {0 * 2 + 0: _basis_row(0 * 2 + 0, 4), 1 * 2 + 0: _basis_row(0 * 2 + 1, 4)}
    return complete_unitary(specified, 4)


def example2() -> TraceWitnessReport:
    """sigma3 x sigma3 x sigma3 simulates I x sigma3 x sigma3 with one ancilla qubit on A"""
    U = example2_unitary()

    single = AncillaConjugation(U=U, V=np.eye(1), d_a_anc=2, d_b_anc=1)
    slice_image = luanc_conjugate(SIGMA_Z, single)
    slice_residual = float(np.max(np.abs(slice_image - IDENTITY2)))

    K = kron_all([SIGMA_Z, SIGMA_Z, SIGMA_Z])
    K_prime = kron_all([IDENTITY2, SIGMA_Z, SIGMA_Z])
    # B and C together play the second party, without an ancilla
    full = AncillaConjugation(U=U, V=np.eye(4), d_a_anc=2, d_b_anc=1)
    residual = float(np.max(np.abs(luanc_conjugate(K, full) - K_prime)))

    report = TraceWitnessReport(
        achieved=residual <= Config.ORTHOGONALITY_TOL,
        slice_identity_residual=slice_residual,
        conjugation_residual=residual,
        source_slice_trace=float(np.real(np.trace(SIGMA_Z))),
        target_slice_trace=float(np.real(np.trace(slice_image))),
    )
    logger.info(f"Three-qubit ancilla simulation residual {residual:.3e}")
    return report
