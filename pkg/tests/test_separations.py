import numpy as np
import pytest

from hamsim.errors import InputValidationError
from hamsim.matcore import IDENTITY2, SIGMA_Z, dagger
from hamsim.protocol import AncillaConjugation, luanc_conjugate
from hamsim.separations import (
    CERTIFICATE_KIND,
    build_dlevel_pair,
    complete_unitary,
    example1,
    example1_unitary,
    example2,
    example2_unitary,
)


def test_dlevel_pair_shapes():
    pair = build_dlevel_pair(3)
    assert pair.K.shape == (9, 9)
    assert np.trace(pair.K) == pytest.approx(3)
    assert np.trace(pair.K_prime) == pytest.approx(3)


@pytest.mark.parametrize("d", range(3, 9))
def test_example1_certifies_separation(d):
    report = example1(d)
    assert report.achieved
    assert report.conjugation_residual <= 1e-10
    assert report.witness_value == pytest.approx(-1 / d, abs=1e-12)
    assert report.isometry_defect <= 1e-12
    assert report.unitarity_defect <= 1e-12
    assert report.separation_certified
    assert report.certificate == CERTIFICATE_KIND


def test_example1_forced_local_terms():
    d = 4
    report = example1(d)
    projector = lambda i: np.diag([1.0 if k == i else 0.0 for k in range(d)])
    assert report.forced_a == pytest.approx(0.0, abs=1e-14)
    assert np.allclose(report.forced_m, 0)
    assert np.allclose(report.forced_n, (projector(1) - projector(0)) / d)


def test_example1_rejects_two_levels():
    with pytest.raises(InputValidationError):
        example1(2)


def test_example1_unitary_slice():
    d = 3
    U = example1_unitary(d)
    assert np.allclose(U @ dagger(U), np.eye(d * d))
    # <0_A'| row for |0_A> reads <1_A 0_A'|
    assert U[0, 1 * d + 0] == 1


def test_complete_unitary_keeps_specified_rows():
    specified = {1: np.array([0, 0, 1, 0], dtype=complex)}
    U = complete_unitary(specified, 4)
    assert np.allclose(U[1], specified[1])
    assert np.allclose(U @ dagger(U), np.eye(4))


def test_example2_slice_and_full_identity():
    report = example2()
    assert report.slice_identity_residual <= 1e-12
    assert report.conjugation_residual <= 1e-12
    assert report.achieved
    assert (report.source_slice_trace, report.target_slice_trace) == pytest.approx((0.0, 2.0))
    assert report.separation_certified


def test_example2_slice_maps_sigma3_to_identity():
    conj = AncillaConjugation(U=example2_unitary(), V=np.eye(1), d_a_anc=2, d_b_anc=1)
    assert np.allclose(luanc_conjugate(SIGMA_Z, conj), IDENTITY2, atol=1e-12)
