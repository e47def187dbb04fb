#!/usr/bin/env python3
"""
Randomized certification sweep over the whole pipeline, collected as a
pandas DataFrame of per-instance check results.
"""

import logging
from typing import Any, Dict, List

import numpy as np
import pandas as pd

from .config import Config
from .errors import HamSimError
from .majorization import (
    bisection_factor,
    birkhoff_decompose,
    majorizes,
    s_majorizes,
    simulation_factor,
)
from .matcore import frobenius
from .pauli_ham import CanonicalForm, canonical_matrix, lambda_from_h, to_matrix
from .protocol import AncillaConjugation, build_permutation_table, bell_projectors, reconstruct, synthesize, synthesize_for, verify_twirl
from .sampling import (
    make_rng,
    random_canonical_h,
    random_hermitian,
    random_interior_point,
    random_pauli_hamiltonian,
    random_unitary,
)
from .trotter import check_dressed

logger = logging.getLogger(__name__)

TROTTER_TIMES = [0.1 * 2.0 ** -j for j in range(4, 9)]


class ProtocolCertifier:
    """Runs every property check on seeded random instances"""

    def __init__(self, samples: int = None, seed: int = None):
        self.samples = samples or Config.SWEEP_SAMPLES
        self.seed = Config.DEFAULT_SEED if seed is None else seed
        self.rng = make_rng(self.seed)
        self.rows: List[Dict[str, Any]] = []

    def _record(self, check: str, instance: int, value: float, passed: bool):
        self.rows.append({'check': check, 'instance': instance, 'value': float(value), 'passed': bool(passed)})

    def check_permutation_table(self):
        projectors = bell_projectors()
        for k, (sigma, pair) in enumerate(build_permutation_table().items()):
            w = pair.operator()
            worst = max(
                frobenius(w @ projectors[i] @ w.conj().T - projectors[sigma[i]]) for i in range(4)
            )
            self._record('permutation_table', k, worst, worst <= Config.ORTHOGONALITY_TOL)

    def check_criteria(self, instance: int, h_target: np.ndarray, h_source: np.ndarray):
        direct = s_majorizes(h_target, h_source).holds
        via_spectra = majorizes(lambda_from_h(h_target), lambda_from_h(h_source)).holds
        self._record('s_majorization_agreement', instance, 0.0 if direct == via_spectra else 1.0, direct == via_spectra)

        lam_t, lam_s = lambda_from_h(h_target), lambda_from_h(h_source)
        closed = simulation_factor(lam_t, lam_s).finite_value
        oracle = bisection_factor(lam_t, lam_s)
        gap = abs(closed - oracle) / max(1.0, closed)
        self._record('factor_vs_bisection', instance, gap, gap <= Config.RECONSTRUCTION_TOL)

    def check_decompositions(self, instance: int, h_target: np.ndarray, h_source: np.ndarray):
        lam_s, lam_t = lambda_from_h(h_source), lambda_from_h(h_target)

        mu = random_interior_point(self.rng, lam_s)
        interior = birkhoff_decompose(mu, lam_s)
        residual = float(np.max(np.abs(interior.reconstruct(lam_s) - mu)))
        self._record('interior_terms', instance, len(interior), len(interior) <= 4)
        self._record('interior_residual', instance, residual, residual <= Config.RECONSTRUCTION_TOL)

        s = simulation_factor(lam_t, lam_s).value
        boundary_mu = s * lam_t.values
        boundary = birkhoff_decompose(boundary_mu, lam_s)
        residual = float(np.max(np.abs(boundary.reconstruct(lam_s) - boundary_mu)))
        self._record('boundary_terms', instance, len(boundary), len(boundary) <= 3)
        self._record('boundary_residual', instance, residual, residual <= Config.RECONSTRUCTION_TOL)

    def check_protocol(self, instance: int, h_target: np.ndarray, h_source: np.ndarray):
        source = CanonicalForm.from_h(h_source)
        target = CanonicalForm.from_h(h_target)
        protocol = synthesize(source, target)
        residual = frobenius(reconstruct(protocol, canonical_matrix(h_source)) - protocol.s * canonical_matrix(h_target))
        self._record('protocol_residual', instance, residual, residual <= Config.PROTOCOL_TOL)

    def check_trotter(self, instance: int):
        source = random_pauli_hamiltonian(self.rng)
        target = random_pauli_hamiltonian(self.rng)
        dressed = synthesize_for(source, target)
        report = check_dressed(dressed, to_matrix(source), to_matrix(target), TROTTER_TIMES)
        value = 2.0 if report.commuting else (report.fitted_slope if report.fitted_slope is not None else float('nan'))
        self._record('trotter_slope', instance, value, report.second_order)

    def check_twirl(self, instance: int):
        d_a_anc, d_b_anc = (int(x) for x in self.rng.integers(1, 4, size=2))
        conj = AncillaConjugation(
            U=random_unitary(self.rng, 2 * d_a_anc),
            V=random_unitary(self.rng, 2 * d_b_anc),
            d_a_anc=d_a_anc,
            d_b_anc=d_b_anc,
        )
        residual = verify_twirl(conj, random_hermitian(self.rng, 4))
        self._record('twirl_residual', instance, residual, residual <= Config.RECONSTRUCTION_TOL)

    def run(self) -> pd.DataFrame:
        logger.info(f"Starting certification sweep: {self.samples} samples, seed {self.seed}")
        self.check_permutation_table()

        for instance in range(self.samples):
            h_target = random_canonical_h(self.rng)
            h_source = random_canonical_h(self.rng)
            try:
                self.check_criteria(instance, h_target, h_source)
                self.check_decompositions(instance, h_target, h_source)
                self.check_protocol(instance, h_target, h_source)
                if instance < min(self.samples, 50):
                    self.check_trotter(instance)
                if instance < min(self.samples, 100):
                    self.check_twirl(instance)
            except HamSimError as e:
                logger.error(f"Instance {instance} failed: {e}")
                self._record('exception', instance, float('nan'), False)

        frame = pd.DataFrame(self.rows, columns=['check', 'instance', 'value', 'passed'])
        logger.info(f"Certification sweep finished: {int(frame['passed'].sum())}/{len(frame)} checks passed")
        return frame


def run_sweep(samples: int = None, seed: int = None) -> pd.DataFrame:
    return ProtocolCertifier(samples=samples, seed=seed).run()


def summarize(frame: pd.DataFrame) -> Dict[str, Any]:
    """Per-check pass counts and the worst observed value"""
    checks = {}
    for check, group in frame.groupby('check', sort=False):
        values = group['value'].dropna()
        checks[check] = {
            'instances': int(len(group)),
            'passed': int(group['passed'].sum()),
            'worst_value': float(values.max()) if len(values) else None,
        }
    return {
        'total_checks': int(len(frame)),
        'total_passed': int(frame['passed'].sum()),
        'all_passed': bool(frame['passed'].all()),
        'checks': checks,
    }
