#!/usr/bin/env python3
"""
Majorization of Bell spectra: the efficient-simulation criterion, the optimal
simulation factor and the greedy decomposition of a majorized vector into
permuted copies of the source spectrum.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .config import Config
from .errors import DomainError, MalformedSpectrumError, NotMajorizedError, ReconstructionError
from .pauli_ham import BellSpectrum, lambda_from_h, require_canonical

logger = logging.getLogger(__name__)

SpectrumLike = Union[BellSpectrum, Sequence[float]]

PERMUTATIONS: Tuple[Tuple[int, ...], ...] = tuple(itertools.permutations(range(4)))

# every nonempty proper subset of the four Bell labels, as indicator rows
_SUBSETS = np.array([
    [1.0 if i in subset else 0.0 for i in range(4)]
    for size in range(1, 4)
    for subset in itertools.combinations(range(4), size)
])
_SUBSET_SIZES = _SUBSETS.sum(axis=1).astype(int)


def _spectrum(value: SpectrumLike) -> BellSpectrum:
    return value if isinstance(value, BellSpectrum) else BellSpectrum(value)


def _scale(*vectors: np.ndarray) -> float:
    return max([1.0] + [float(np.max(np.abs(v))) for v in vectors])


@dataclass(frozen=True)
class MajorizationVerdict:
    holds: bool
    slack: Tuple[float, float, float]
    failing_index: Optional[int] = None


@dataclass(frozen=True)
class SimulationFactor:
    """Largest s with s*target majorized by source; value is None when unbounded"""

    value: Optional[float]
    infinite: bool = False
    binding_constraints: Tuple[int, ...] = ()

    @property
    def finite_value(self) -> float:
        return math.inf if self.infinite else self.value


@dataclass(frozen=True)
class BirkhoffDecomposition:
    """Convex weights over permutations p, each acting as (P lambda)_j = lambda_{p[j]}"""

    terms: Tuple[Tuple[float, Tuple[int, ...]], ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.terms)

    def reconstruct(self, lam: SpectrumLike) -> np.ndarray:
        values = _spectrum(lam).values
        return sum(weight * values[list(perm)] for weight, perm in self.terms)


def _verdict(source_prefix: np.ndarray, target_prefix: np.ndarray) -> MajorizationVerdict:
    slack = source_prefix - target_prefix
    tol = Config.SPECTRUM_TOL * _scale(source_prefix, target_prefix)
    failing = [k + 1 for k in range(len(slack)) if slack[k] < -tol]
    return MajorizationVerdict(
        holds=not failing,
        slack=tuple(float(x) for x in slack),
        failing_index=failing[0] if failing else None,
    )


def majorizes(target: SpectrumLike, source: SpectrumLike) -> MajorizationVerdict:
    """Decide target < source (target majorized by source) on the three prefix sums"""
    target, source = _spectrum(target), _spectrum(source)
    return _verdict(source.prefix_sums(), target.prefix_sums())


def s_majorizes(h_target: Sequence[float], h_source: Sequence[float]) -> MajorizationVerdict:
    """The same criterion written directly on canonical h-vectors"""
    t1, t2, t3 = require_canonical(h_target, "h_target")
    s1, s2, s3 = require_canonical(h_source, "h_source")
    return _verdict(
        np.array([s1, s1 + s2 - s3, s1 + s2 + s3]),
        np.array([t1, t1 + t2 - t3, t1 + t2 + t3]),
    )


def can_simulate_efficiently(target: SpectrumLike, source: SpectrumLike) -> bool:
    return majorizes(target, source).holds


def lu_equivalent(first: SpectrumLike, second: SpectrumLike) -> bool:
    return majorizes(first, second).holds and majorizes(second, first).holds


def simulation_factor(target: SpectrumLike, source: SpectrumLike) -> SimulationFactor:
    target, source = _spectrum(target), _spectrum(source)

    if target.is_zero():
        return SimulationFactor(value=None, infinite=True)

    source_prefix = np.maximum(source.prefix_sums(), 0.0)
    target_prefix = target.prefix_sums()

    ratios = {}
    for k in range(3):
        # prefix sums of a decreasing zero-sum vector are >= 0, so a vanishing
        # denominator never constrains s
        if target_prefix[k] > Config.ZERO_DENOMINATOR_TOL:
            ratios[k + 1] = source_prefix[k] / target_prefix[k]

    value = min(ratios.values())
    binding = tuple(k for k, ratio in ratios.items() if ratio <= value * (1 + 1e-12) + Config.ZERO_DENOMINATOR_TOL)
    return SimulationFactor(value=float(value), binding_constraints=binding)


def factor_from_h(h_target: Sequence[float], h_source: Sequence[float]) -> SimulationFactor:
    return simulation_factor(lambda_from_h(h_target), lambda_from_h(h_source))


def bisection_factor(target: SpectrumLike, source: SpectrumLike, tol: float = 1e-13) -> float:
    """Largest s with majorizes(s*target, source), found by bisection"""
    target, source = _spectrum(target), _spectrum(source)
    if target.is_zero():
        return math.inf

    def feasible(s: float) -> bool:
        return majorizes(target.scaled(s), source).holds

    lo, hi = 0.0, 1.0
    while feasible(hi):
        lo, hi = hi, hi * 2
        if hi > 1e12:
            return math.inf

    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    return lo


def hull_membership(v: Sequence[float], lam: SpectrumLike, tol: Optional[float] = None) -> bool:
    """True iff v lies in the convex hull of the permutations of lam"""
    lam = _spectrum(lam)
    v = np.asarray(v, dtype=float)
    scale = _scale(v, lam.values)
    slack = (Config.SPECTRUM_TOL if tol is None else tol) * scale
    if v.shape != (4,) or abs(v.sum()) > slack:
        return False
    ordered = np.sort(v)[::-1]
    return bool(np.all(np.cumsum(ordered)[:3] <= lam.prefix_sums() + slack))


def is_on_boundary(mu: Sequence[float], lam: SpectrumLike) -> bool:
    """A tight prefix inequality puts mu on a facet of the permutation hull"""
    lam = _spectrum(lam)
    ordered = np.sort(np.asarray(mu, dtype=float))[::-1]
    slack = lam.prefix_sums() - np.cumsum(ordered)[:3]
    return bool(np.min(slack) <= Config.SNAP_TOL * _scale(ordered, lam.values))


def _candidate_images(lam: BellSpectrum) -> List[Tuple[Tuple[int, ...], np.ndarray]]:
    """Distinct permuted copies of lam, keeping the lexicographically first permutation"""
    tol = Config.SPECTRUM_TOL * _scale(lam.values)
    images: List[Tuple[Tuple[int, ...], np.ndarray]] = []
    for perm in PERMUTATIONS:
        image = lam.values[list(perm)]
        if not any(np.max(np.abs(image - seen)) <= tol for _, seen in images):
            images.append((perm, image))
    return images


def _facet_slacks(residual: np.ndarray, images: np.ndarray, lam: BellSpectrum) -> Tuple[np.ndarray, np.ndarray]:
    """Slack of the residual (a) and of every image (b) on each facet sum_I x <= L_|I|"""
    bounds = np.concatenate([[0.0], np.cumsum(lam.values)[:3]])[_SUBSET_SIZES]
    a = bounds - _SUBSETS @ residual
    b = bounds[None, :] - images @ _SUBSETS.T
    return a, b


def _facet_epsilons(a: np.ndarray, b: np.ndarray, tight: np.ndarray, tol: float) -> Tuple[np.ndarray, np.ndarray]:
    """Largest eps keeping (residual - eps*image)/(1-eps) inside the hull, per image.

    Only images lying on every tight facet of the residual can move it at all;
    for those, each remaining facet the image leaves gives eps <= a/b.
    """
    on_face = np.all(b[:, tight] <= tol, axis=1)
    eps = np.zeros(len(b))
    for row in np.flatnonzero(on_face):
        active = (b[row] > tol) & ~tight
        if np.any(active):
            eps[row] = min(1.0, float(np.min(a[active] / b[row, active])))
        else:
            eps[row] = 1.0
    return np.clip(eps, 0.0, 1.0), on_face


def _bisect_epsilon(residual: np.ndarray, image: np.ndarray, lam: BellSpectrum, facet_eps: float) -> float:
    """Bracket eps with the re-sorting oracle and snap onto the facet bound"""
    lo, hi = 0.0, 1.0
    while hi - lo > Config.BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        if hull_membership((residual - mid * image) / (1 - mid), lam, tol=Config.SNAP_TOL):
            lo = mid
        else:
            hi = mid

    # the facet bound is exact arithmetic on the tracked tight facets; the
    # oracle only differs from it by its tolerance
    if abs(lo - facet_eps) > Config.SNAP_TOL:
        logger.debug(f"Bisection eps {lo:.15f} differs from facet bound {facet_eps:.15f}; keeping the facet bound")
    return facet_eps


def birkhoff_decompose(mu: Sequence[float], lam: SpectrumLike) -> BirkhoffDecomposition:
    """Greedily peel permuted copies of lam off mu until the residual is a vertex"""
    lam = _spectrum(lam)
    mu = np.asarray(mu, dtype=float).reshape(-1)
    if mu.shape != (4,):
        raise MalformedSpectrumError(f"mu must have 4 entries, got {mu.tolist()}")

    verdict = majorizes(np.sort(mu)[::-1], lam)
    if not verdict.holds:
        raise NotMajorizedError(
            f"mu={mu.tolist()} is not majorized by lambda={lam.tolist()} (prefix {verdict.failing_index} fails)",
            failing_index=verdict.failing_index,
        )

    candidates = _candidate_images(lam)
    perms = [perm for perm, _ in candidates]
    images = np.array([image for _, image in candidates])
    match_tol = Config.RECONSTRUCTION_TOL * _scale(mu, lam.values)

    terms: List[Tuple[float, Tuple[int, ...]]] = []
    residual = mu.copy()
    remaining = 1.0
    # facets the residual has reached stay tight for the rest of the peeling
    tight = np.zeros(len(_SUBSETS), dtype=bool)

    for step in range(Config.MAX_DECOMPOSITION_STEPS):
        distances = np.max(np.abs(images - residual[None, :]), axis=1)
        nearest = int(np.argmin(distances))
        if distances[nearest] <= match_tol:
            terms.append((remaining, perms[nearest]))
            break

        tol = Config.SNAP_TOL * _scale(residual, lam.values)
        a, b = _facet_slacks(residual, images, lam)
        tight |= a <= tol
        eps_all, on_face = _facet_epsilons(a, b, tight, tol)

        if not np.any(on_face):
            raise DomainError(f"no permutation of lambda lies on the facets touched at step {step}")
        if np.count_nonzero(on_face) == 1:
            # the tight facets pin the residual to a single vertex
            terms.append((remaining, perms[int(np.argmax(on_face))]))
            break

        # argmax keeps the first (lexicographically smallest) permutation on ties
        best = int(np.argmax(eps_all >= np.max(eps_all) - Config.SNAP_TOL))
        eps = _bisect_epsilon(residual, images[best], lam, float(eps_all[best]))
        if eps >= 1.0 - Config.SNAP_TOL:
            terms.append((remaining, perms[best]))
            break
        if eps <= Config.SNAP_TOL:
            raise DomainError(f"greedy decomposition stalled at step {step} with eps={eps:.3e}")

        logger.debug(f"Step {step}: permutation {perms[best]} with eps={eps:.12f}")
        stopping = (b[best] > tol) & ~tight
        tight[stopping] = a[stopping] <= (eps + Config.SNAP_TOL) * b[best, stopping]

        terms.append((remaining * eps, perms[best]))
        residual = (residual - eps * images[best]) / (1 - eps)
        remaining *= 1 - eps
    else:
        raise DomainError(f"greedy decomposition did not terminate in {Config.MAX_DECOMPOSITION_STEPS} steps")

    decomposition = BirkhoffDecomposition(terms=tuple(terms))
    residual_norm = float(np.max(np.abs(decomposition.reconstruct(lam) - mu)))
    if residual_norm > match_tol:
        raise ReconstructionError(f"decomposition misses mu by {residual_norm:.3e}", residual=residual_norm)

    logger.debug(f"Decomposed mu={mu.tolist()} into {len(terms)} permutations")
    return decomposition
