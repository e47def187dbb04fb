#!/usr/bin/env python3
"""
Finite-time certification of simulation protocols: the schedule is run as an
interspersed product of true evolutions and compared with the evolution it is
meant to simulate.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .config import Config
from .errors import InputValidationError, ReconstructionError
from .matcore import CMat, as_cmat, dagger, expm, frobenius, operator_norm, require_hermitian
from .pauli_ham import to_matrix
from .protocol import DressedProtocol, reconstruct

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrotterReport:
    times: Tuple[float, ...]
    errors: Tuple[float, ...]
    fitted_slope: Optional[float]
    halving_ratios: Tuple[Optional[float], ...]
    rounds: int = 1
    commuting: bool = False
    reconstruction_residual: float = 0.0
    max_unitarity_defect: float = 0.0

    @property
    def second_order(self) -> bool:
        """Slope near 2, or errors at machine precision throughout"""
        if self.commuting:
            return True
        return self.fitted_slope is not None and 1.8 <= self.fitted_slope <= 2.2


def _correction(local_correction) -> Optional[CMat]:
    if local_correction is None:
        return None
    if hasattr(local_correction, 'm'):
        return to_matrix(local_correction)
    return require_hermitian(local_correction, "local correction")


def run_product(protocol, H: CMat, t: float, rounds: int = 1, local_correction=None) -> CMat:
    """Term 1 acts first; each round ends with the free local correction, if any"""
    if t <= 0:
        raise InputValidationError(f"evolution time must be positive, got {t}")
    if rounds < 1:
        raise InputValidationError(f"rounds must be >= 1, got {rounds}")

    H = require_hermitian(H, "H")
    step = t / rounds

    single = np.eye(H.shape[0], dtype=complex)
    for p, pair in protocol.terms:
        w = pair.operator()
        single = w @ expm(H, p * step) @ dagger(w) @ single

    correction = _correction(local_correction)
    if correction is not None:
        single = expm(correction, step) @ single

    return np.linalg.matrix_power(single, rounds)


def _fit_slope(times: np.ndarray, errors: np.ndarray) -> Optional[float]:
    """Log-log slope over the smallest half of the t values"""
    window = max(2, (len(times) + 1) // 2)
    order = np.argsort(times)[:window]
    t_win, e_win = times[order], errors[order]
    if len(t_win) < 2 or np.any(e_win <= 0):
        return None
    slope, _ = np.polyfit(np.log(t_win), np.log(e_win), 1)
    return float(slope)


def scaling_check(protocol, H: CMat, H_target: CMat, s: float, t_values: Sequence[float],
                  rounds: int = 1, local_correction=None) -> TrotterReport:
    H = require_hermitian(H, "H")
    H_target = require_hermitian(H_target, "H_target")
    correction = _correction(local_correction)

    simulated = reconstruct(protocol, H)
    if correction is not None:
        simulated = simulated + correction
    residual = frobenius(simulated - s * H_target)
    if residual > Config.PROTOCOL_TOL:
        raise ReconstructionError(
            f"protocol reconstructs s*H' only to {residual:.3e}; refusing to run the product", residual=residual
        )

    times = sorted((float(t) for t in t_values), reverse=True)
    if not times:
        raise InputValidationError("t-sweep is empty")

    errors: List[float] = []
    unitarity = 0.0
    for t in times:
        product = run_product(protocol, H, t, rounds=rounds, local_correction=correction)
        unitarity = max(unitarity, frobenius(product @ dagger(product) - np.eye(product.shape[0])))
        error = operator_norm(product - expm(H_target, s * t))
        errors.append(error)
        logger.debug(f"t={t:.6e}: error {error:.3e}")

    commuting = max(errors) <= Config.COMMUTING_ERROR_TOL
    slope = None if commuting else _fit_slope(np.array(times), np.array(errors))
    ratios = tuple(
        errors[k] / errors[k + 1] if errors[k + 1] > 0 else None
        for k in range(len(errors) - 1)
    )

    report = TrotterReport(
        times=tuple(times),
        errors=tuple(errors),
        fitted_slope=slope,
        halving_ratios=ratios,
        rounds=rounds,
        commuting=commuting,
        reconstruction_residual=residual,
        max_unitarity_defect=unitarity,
    )
    if commuting:
        logger.info(f"Scaling check over {len(times)} times: terms commute, max error {max(errors):.3e}")
    else:
        logger.info(f"Scaling check over {len(times)} times: fitted slope {slope}")
    return report


def check_dressed(dressed: DressedProtocol, H: CMat, H_target: CMat, t_values: Sequence[float],
                  rounds: int = 1) -> TrotterReport:
    """Scaling check for a protocol acting on the original, non-canonical Hamiltonians"""
    return scaling_check(
        dressed, as_cmat(H), as_cmat(H_target), dressed.s, t_values,
        rounds=rounds, local_correction=dressed.local_correction,
    )
