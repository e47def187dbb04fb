#!/usr/bin/env python3
"""
Executable simulation protocols: local unitaries that permute the Bell basis,
synthesis of optimal time-sharing schedules from a greedy permutation
decomposition, re-dressing for non-canonical Hamiltonians, and the
ancilla-assisted conjugations with their phase-twirl realization.
"""

import functools
import logging
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .config import Config
from .errors import (
    DimensionMismatchError,
    FactorExceededError,
    GeneratorVerificationError,
    InputValidationError,
    ReconstructionError,
    SimulationImpossibleError,
)
from .majorization import PERMUTATIONS, BirkhoffDecomposition, birkhoff_decompose, simulation_factor
from .matcore import IDENTITY2, SIGMA_X, SIGMA_Z, CMat, as_cmat, dagger, frobenius, is_unitary, partial_trace, require_hermitian
from .pauli_ham import (
    BELL_VECTORS,
    CanonicalForm,
    PauliHamiltonian,
    canonicalize,
    from_matrix,
    lambda_from_h,
    to_matrix,
)

logger = logging.getLogger(__name__)

Permutation = Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class BellBasis:
    """Columns are the four maximally entangled vectors Phi_1..Phi_4"""

    vectors: CMat = field(default_factory=lambda: BELL_VECTORS.copy())

    def projectors(self) -> List[CMat]:
        return [np.outer(self.vectors[:, i], self.vectors[:, i].conj()) for i in range(4)]

    def is_orthonormal(self, tol: float = Config.ORTHOGONALITY_TOL) -> bool:
        return frobenius(dagger(self.vectors) @ self.vectors - np.eye(4)) <= tol

    def is_maximally_entangled(self, tol: float = Config.ORTHOGONALITY_TOL) -> bool:
        for projector in self.projectors():
            reduced = partial_trace(projector, [2, 2], keep=[0])
            if frobenius(reduced - IDENTITY2 / 2) > tol:
                return False
        return True


def bell_basis() -> BellBasis:
    return BellBasis()


def bell_projectors() -> List[CMat]:
    return bell_basis().projectors()


@dataclass(frozen=True, eq=False)
class LocalUnitaryPair:
    u: CMat
    v: CMat

    def __post_init__(self):
        for name in ('u', 'v'):
            mat = as_cmat(getattr(self, name), name)
            if mat.shape != (2, 2) or not is_unitary(mat):
                raise InputValidationError(f"{name} must be a 2x2 unitary")
            object.__setattr__(self, name, mat)

    def operator(self) -> CMat:
        return np.kron(self.u, self.v)

    def then(self, other: 'LocalUnitaryPair') -> 'LocalUnitaryPair':
        """Apply self first, then other"""
        return LocalUnitaryPair(other.u @ self.u, other.v @ self.v)


IDENTITY_PAIR = LocalUnitaryPair(IDENTITY2, IDENTITY2)

_SQ = 1 / np.sqrt(2)

# Adjacent transpositions of Bell labels and the local unitaries realizing them.
# The (2 3) generator carries (I - i sigma_3) on both sides; with opposite signs the
# same product exchanges Phi_1 and Phi_4 instead.
GENERATORS: Mapping[Tuple[int, int], LocalUnitaryPair] = MappingProxyType({
    (0, 1): LocalUnitaryPair(_SQ * (IDENTITY2 - 1j * SIGMA_X), _SQ * (IDENTITY2 - 1j * SIGMA_X)),
    (1, 2): LocalUnitaryPair(_SQ * (IDENTITY2 - 1j * SIGMA_Z), _SQ * (IDENTITY2 - 1j * SIGMA_Z)),
    (2, 3): LocalUnitaryPair(_SQ * (IDENTITY2 + 1j * SIGMA_X), _SQ * (IDENTITY2 - 1j * SIGMA_X)),
})

OPPOSITE_SIGN_Z_PAIR = LocalUnitaryPair(_SQ * (IDENTITY2 + 1j * SIGMA_Z), _SQ * (IDENTITY2 - 1j * SIGMA_Z))


def realized_permutation(pair: LocalUnitaryPair, tol: float = Config.ORTHOGONALITY_TOL) -> Optional[Permutation]:
    """sigma with (u x v) P_i (u x v)^dagger = P_sigma(i), or None if no such sigma"""
    in_bell = dagger(BELL_VECTORS) @ pair.operator() @ BELL_VECTORS
    sigma = tuple(int(np.argmax(np.abs(in_bell[:, i]))) for i in range(4))
    if sorted(sigma) != list(range(4)):
        return None

    projectors = bell_projectors()
    w = pair.operator()
    for i in range(4):
        if frobenius(w @ projectors[i] @ dagger(w) - projectors[sigma[i]]) > tol:
            return None
    return sigma


def permutation_word(sigma: Sequence[int]) -> List[int]:
    """Adjacent swaps k (exchanging labels k, k+1), in application order, composing to sigma"""
    arrangement = list(sigma)
    word = []
    for end in range(len(arrangement) - 1, 0, -1):
        for k in range(end):
            if arrangement[k] > arrangement[k + 1]:
                arrangement[k], arrangement[k + 1] = arrangement[k + 1], arrangement[k]
                word.append(k)
    return word


def inverse_permutation(perm: Sequence[int]) -> Permutation:
    inverse = [0] * len(perm)
    for position, value in enumerate(perm):
        inverse[value] = position
    return tuple(inverse)


@functools.lru_cache(maxsize=1)
def build_permutation_table() -> Mapping[Permutation, LocalUnitaryPair]:
    """All 24 Bell-label permutations as compositions of the three generators"""
    for transposition, pair in GENERATORS.items():
        expected = list(range(4))
        expected[transposition[0]], expected[transposition[1]] = transposition[1], transposition[0]
        realized = realized_permutation(pair)
        if realized != tuple(expected):
            raise GeneratorVerificationError(
                f"generator for {transposition} realizes {realized}, expected {tuple(expected)}"
            )

    table: Dict[Permutation, LocalUnitaryPair] = {}
    for sigma in PERMUTATIONS:
        pair = IDENTITY_PAIR
        for k in permutation_word(sigma):
            pair = pair.then(GENERATORS[(k, k + 1)])
        if realized_permutation(pair) != sigma:
            raise GeneratorVerificationError(f"composed word for {sigma} does not realize it")
        table[sigma] = pair

    logger.info(f"Built Bell permutation table with {len(table)} entries")
    return MappingProxyType(table)


@dataclass(frozen=True, eq=False)
class SimulationProtocol:
    """Time-sharing schedule sum_k p_k (u_k x v_k) H (u_k x v_k)^dagger = s H'"""

    terms: Tuple[Tuple[float, LocalUnitaryPair], ...]
    s: float
    target_h: np.ndarray
    source_h: np.ndarray
    permutations: Tuple[Permutation, ...] = ()

    @property
    def weights(self) -> np.ndarray:
        return np.array([p for p, _ in self.terms])

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True, eq=False)
class DressedProtocol:
    """A canonical protocol carried over to the original (non-canonical) Hamiltonians"""

    canonical: SimulationProtocol
    terms: Tuple[Tuple[float, LocalUnitaryPair], ...]
    local_correction: PauliHamiltonian
    s: float

    def __len__(self) -> int:
        return len(self.terms)


def _mix(terms, H: CMat) -> CMat:
    H = as_cmat(H)
    result = np.zeros_like(H, dtype=complex)
    for p, pair in terms:
        w = pair.operator()
        result += p * (w @ H @ dagger(w))
    return result


def reconstruct(protocol, H: CMat) -> CMat:
    """The weighted conjugation sum sum_k p_k W_k H W_k^dagger"""
    return _mix(protocol.terms, H)


def synthesize(source: CanonicalForm, target: CanonicalForm, s: Optional[float] = None) -> SimulationProtocol:
    lam = lambda_from_h(source.h)
    lam_target = lambda_from_h(target.h)
    factor = simulation_factor(lam_target, lam)

    if s is None:
        s = 1.0 if factor.infinite else factor.value
    if s < 0:
        raise InputValidationError(f"simulation factor must be nonnegative, got {s}")
    if not factor.infinite:
        if s > factor.value * (1 + 1e-12) + Config.ZERO_DENOMINATOR_TOL:
            raise FactorExceededError(
                f"s={s!r} exceeds the optimal simulation factor {factor.value!r}", optimum=factor.value
            )
        s = min(s, factor.value)

    decomposition: BirkhoffDecomposition = birkhoff_decompose(s * lam_target.values, lam)
    table = build_permutation_table()

    terms = []
    perms = []
    for weight, perm in decomposition.terms:
        # image_j = lambda_{perm[j]} moves Bell label perm[j] onto label j
        sigma = inverse_permutation(perm)
        terms.append((float(weight), table[sigma]))
        perms.append(sigma)

    protocol = SimulationProtocol(
        terms=tuple(terms),
        s=float(s),
        target_h=np.array(target.h, dtype=float),
        source_h=np.array(source.h, dtype=float),
        permutations=tuple(perms),
    )

    residual = frobenius(reconstruct(protocol, source.matrix()) - s * target.matrix())
    if residual > Config.PROTOCOL_TOL:
        raise ReconstructionError(f"synthesized protocol misses s*H' by {residual:.3e}", residual=residual)

    logger.info(f"Synthesized protocol with {len(terms)} terms at s={s:.12g}")
    return protocol


def dress(protocol: SimulationProtocol, source: CanonicalForm, target: CanonicalForm) -> DressedProtocol:
    """Conjugate the canonical schedule into the frames of the original Hamiltonians"""
    terms = []
    for p, pair in protocol.terms:
        u = target.u @ pair.u @ dagger(source.u)
        v = target.v @ pair.v @ dagger(source.v)
        terms.append((p, LocalUnitaryPair(u, v)))

    mixed_locals = _mix(terms, to_matrix(source.removed_locals()))
    correction = protocol.s * to_matrix(target.removed_locals()) - mixed_locals
    local_correction = from_matrix(0.5 * (correction + dagger(correction)))

    leak = float(np.max(np.abs(local_correction.h)))
    if leak > Config.PROTOCOL_TOL:
        raise ReconstructionError(f"local correction picked up a coupling term of size {leak:.3e}", residual=leak)

    return DressedProtocol(
        canonical=protocol,
        terms=tuple(terms),
        local_correction=PauliHamiltonian(a=local_correction.a, m=local_correction.m, n=local_correction.n),
        s=protocol.s,
    )


def dressed_residual(dressed: DressedProtocol, H: CMat, H_target: CMat) -> float:
    simulated = reconstruct(dressed, H) + to_matrix(dressed.local_correction)
    return frobenius(simulated - dressed.s * as_cmat(H_target))


def synthesize_for(source: PauliHamiltonian, target: PauliHamiltonian, s: Optional[float] = None) -> DressedProtocol:
    source_form = canonicalize(source)
    target_form = canonicalize(target)
    protocol = synthesize(source_form, target_form, s)
    dressed = dress(protocol, source_form, target_form)

    residual = dressed_residual(dressed, to_matrix(source), to_matrix(target))
    if residual > Config.PROTOCOL_TOL:
        raise ReconstructionError(f"dressed protocol misses s*H' by {residual:.3e}", residual=residual)
    return dressed


def gate_time_bound(target: CanonicalForm, source: CanonicalForm, T_prime: float) -> float:
    """Upper bound T'/s on the interaction time needed for exp(-i H' T')"""
    factor = simulation_factor(lambda_from_h(target.h), lambda_from_h(source.h))
    if factor.infinite:
        return 0.0
    if factor.value <= Config.ZERO_DENOMINATOR_TOL:
        raise SimulationImpossibleError("simulation factor is zero; no finite time suffices")
    return T_prime / factor.value


@dataclass(frozen=True, eq=False)
class AncillaConjugation:
    """U on A x A' and V on B x B', ancilla index running fastest"""

    U: CMat
    V: CMat
    d_a_anc: int = 1
    d_b_anc: int = 1

    def __post_init__(self):
        for name, anc in (('U', self.d_a_anc), ('V', self.d_b_anc)):
            mat = as_cmat(getattr(self, name), name)
            if anc < 1 or mat.shape[0] % anc:
                raise DimensionMismatchError(f"{name} of size {mat.shape[0]} is not divisible by ancilla dim {anc}")
            if not is_unitary(mat, tol=Config.ORTHOGONALITY_TOL * max(1, mat.shape[0])):
                raise InputValidationError(f"{name} is not unitary")
            object.__setattr__(self, name, mat)

    @property
    def d_a(self) -> int:
        return self.U.shape[0] // self.d_a_anc

    @property
    def d_b(self) -> int:
        return self.V.shape[0] // self.d_b_anc


def _blank(dim: int) -> np.ndarray:
    ket = np.zeros((dim, 1), dtype=complex)
    ket[0, 0] = 1
    return ket


def embed_with_ancillas(H: CMat, conj: AncillaConjugation) -> CMat:
    """H x I_{A'B'} reordered to the A, A', B, B' factor order of U x V"""
    dims = [conj.d_a, conj.d_b, conj.d_a_anc, conj.d_b_anc]
    full = np.kron(H, np.eye(conj.d_a_anc * conj.d_b_anc))
    total = int(np.prod(dims))
    tensor = full.reshape(dims + dims).transpose(0, 2, 1, 3, 4, 6, 5, 7)
    return tensor.reshape(total, total)


def blank_ancilla_isometry(conj: AncillaConjugation) -> CMat:
    """psi -> psi with both ancillas in |0>, as a map from AB into A A' B B'"""
    left = np.kron(np.eye(conj.d_a), _blank(conj.d_a_anc))
    right = np.kron(np.eye(conj.d_b), _blank(conj.d_b_anc))
    return np.kron(left, right)


def _check_system(H: CMat, conj: AncillaConjugation) -> CMat:
    H = require_hermitian(H, "H")
    if H.shape[0] != conj.d_a * conj.d_b:
        raise DimensionMismatchError(
            f"H has dimension {H.shape[0]} but U, V act on systems of dimensions {conj.d_a} x {conj.d_b}"
        )
    return H


def luanc_conjugate(H: CMat, conj: AncillaConjugation) -> CMat:
    """<0_A' 0_B'| (U x V)(H x I)(U x V)^dagger |0_A' 0_B'>"""
    H = _check_system(H, conj)
    w = np.kron(conj.U, conj.V)
    j = blank_ancilla_isometry(conj)
    return dagger(j) @ w @ embed_with_ancillas(H, conj) @ dagger(w) @ j


@dataclass(frozen=True, eq=False)
class TwirlEnsemble:
    terms: Tuple[Tuple[float, CMat, CMat], ...]

    def __len__(self) -> int:
        return len(self.terms)


def _phase_diagonal(index: int, dim: int) -> CMat:
    return np.diag(np.exp(2j * np.pi * index * np.arange(dim) / dim))


def build_twirl(conj: AncillaConjugation) -> TwirlEnsemble:
    """Uniform ensemble of phase-shifted U_a = (I x D_a) U and V_b = (I x D_b) V"""
    weight = 1.0 / (conj.d_a_anc * conj.d_b_anc)
    u_family = [np.kron(np.eye(conj.d_a), _phase_diagonal(a, conj.d_a_anc)) @ conj.U for a in range(conj.d_a_anc)]
    v_family = [np.kron(np.eye(conj.d_b), _phase_diagonal(b, conj.d_b_anc)) @ conj.V for b in range(conj.d_b_anc)]
    return TwirlEnsemble(terms=tuple((weight, u_a, v_b) for u_a in u_family for v_b in v_family))


def verify_twirl(conj: AncillaConjugation, H: CMat) -> float:
    """Distance between the twirled average and the blank-ancilla projection, on blank inputs"""
    H = _check_system(H, conj)
    embedded = embed_with_ancillas(H, conj)
    j = blank_ancilla_isometry(conj)

    averaged = np.zeros((embedded.shape[0], j.shape[1]), dtype=complex)
    for p, u_a, v_b in build_twirl(conj).terms:
        w = np.kron(u_a, v_b)
        averaged += p * (w @ embedded @ dagger(w) @ j)

    w = np.kron(conj.U, conj.V)
    projected = j @ dagger(j) @ w @ embedded @ dagger(w) @ j
    residual = frobenius(averaged - projected)
    logger.debug(f"Twirl residual {residual:.3e} over {conj.d_a_anc * conj.d_b_anc} terms")
    return residual
