import math

import numpy as np
import pytest

from choiwit import (
    BoundaryCaseError,
    MapParams,
    NonpositiveTError,
    OffFamilyError,
    Verdict,
    certify,
    det_closed_form,
    expectation,
    family_from_alpha,
    kron_vec,
    lu_det,
    product_vectors,
    rank_with_tol,
    span_matrix,
    witness_matrix,
    zero_expectation_check,
)

PI = math.pi


def test_product_vectors_at_t_one():
    pairs = product_vectors(1.0)
    assert pairs[3].k == 4
    np.testing.assert_array_equal(pairs[3].psi, np.array([0, 1, 1], dtype=complex))
    np.testing.assert_array_equal(pairs[3].phi, np.array([0, 1, 1], dtype=complex))


def test_product_vectors_at_t_four():
    pairs = product_vectors(4.0)
    np.testing.assert_array_equal(pairs[5].phi, np.array([4, 0, 2], dtype=complex))


def test_first_pair_is_t_independent():
    for t in (0.1, 1.0, 7.3):
        pairs = product_vectors(t)
        np.testing.assert_array_equal(pairs[0].psi, np.ones(3, dtype=complex))
        np.testing.assert_array_equal(pairs[0].phi, np.ones(3, dtype=complex))


@pytest.mark.parametrize("t", [0.0, -1.0, float("nan")])
def test_product_vectors_rejects_bad_t(t):
    with pytest.raises(NonpositiveTError):
        product_vectors(t)


def test_span_matrix_columns():
    m = span_matrix(1.0, conjugated=False)
    np.testing.assert_array_equal(m.mat[:, 0], np.ones(9, dtype=complex))
    mc = span_matrix(1.0, conjugated=True)
    pairs = product_vectors(1.0)
    np.testing.assert_array_equal(
        mc.mat[:, 2], kron_vec(pairs[2].psi, np.conj(pairs[2].phi))
    )
    assert mc.conjugated and mc.t == 1.0


def test_span_matrix_full_rank_at_quarter_turn():
    t = 2 + math.sqrt(3)
    for conjugated in (False, True):
        m = span_matrix(t, conjugated).mat
        m = m / np.linalg.norm(m, axis=0, keepdims=True)
        assert rank_with_tol(m, 1e-8) == 9


def test_det_closed_form_values():
    assert det_closed_form(1.0, conjugated=True) == 0
    assert det_closed_form(1.0, conjugated=False) == pytest.approx(32j)
    assert det_closed_form(4.0, conjugated=True) == pytest.approx(-110592 - 110592j)


def test_det_closed_form_matches_lu_det():
    rng = np.random.default_rng(31)
    for t in rng.uniform(0.05, 20.0, 40):
        for conjugated in (False, True):
            numeric = lu_det(span_matrix(float(t), conjugated).mat)
            closed = det_closed_form(float(t), conjugated)
            assert abs(numeric - closed) <= 1e-8 * abs(closed) + 1e-8


def test_plain_span_matrix_never_singular():
    rng = np.random.default_rng(37)
    for t in np.concatenate([[1.0], rng.uniform(0.05, 20.0, 50)]):
        m = span_matrix(float(t), conjugated=False).mat
        m = m / np.linalg.norm(m, axis=0, keepdims=True)
        assert rank_with_tol(m, 1e-8) == 9


def test_conjugated_span_matrix_rank_away_from_one():
    rng = np.random.default_rng(41)
    for t in rng.uniform(0.05, 20.0, 50):
        if abs(t - 1.0) <= 1e-6:
            continue
        m = span_matrix(float(t), conjugated=True).mat
        m = m / np.linalg.norm(m, axis=0, keepdims=True)
        assert rank_with_tol(m, 1e-8) == 9


def test_conjugated_determinant_vanishes_cubically():
    # |det| / |t-1|^3 stays bounded near t = 1 (the limit is 8*sqrt(2)).
    for dt in (1e-2, 1e-3, 1e-4):
        for t in (1.0 + dt, 1.0 - dt):
            ratio = abs(lu_det(span_matrix(t, conjugated=True).mat)) / dt**3
            assert 5.0 < ratio < 20.0


def test_zero_expectations_on_family():
    result = zero_expectation_check(MapParams(0, 1, 1))
    assert result.max_w <= 1e-12
    assert result.max_wgamma <= 1e-12
    point = family_from_alpha(PI / 2)
    result = zero_expectation_check(point.params)
    assert result.max_w <= 1e-12
    assert result.max_wgamma <= 1e-12


def test_zero_expectation_guards():
    with pytest.raises(OffFamilyError):
        zero_expectation_check(MapParams(1, 1, 1))
    with pytest.raises(OffFamilyError):
        zero_expectation_check(MapParams(2 / 3, 2 / 3, 2 / 3))
    with pytest.raises(BoundaryCaseError):
        zero_expectation_check(MapParams(1, 0, 1))


def test_certify_interior_point():
    cert = certify(family_from_alpha(PI / 2).params)
    assert cert.verdict is Verdict.INDECOMPOSABLE_OPTIMAL
    assert cert.w_optimal and cert.wgamma_optimal
    d = cert.diagnostics
    assert d.rank_m == 9 and d.rank_mprime == 9
    assert d.max_abs_expectation_w <= 1e-10
    assert abs(d.det_m) > 1e-12 and abs(d.det_mprime) > 1e-12


def test_certify_t_one_point():
    cert = certify(MapParams(0, 1, 1))
    assert cert.verdict is Verdict.OPTIMAL_ONLY
    assert cert.w_optimal and not cert.wgamma_optimal
    assert cert.diagnostics.rank_m == 9
    assert cert.diagnostics.rank_mprime == 6  # frozen regression value
    assert abs(cert.diagnostics.det_mprime) <= 1e-9
    assert cert.diagnostics.note is not None


def test_certify_boundary_point():
    cert = certify(MapParams(1, 0, 1))
    assert cert.verdict is Verdict.BOUNDARY
    assert cert.t is None
    assert not cert.w_optimal and not cert.wgamma_optimal
    assert cert.diagnostics.rank_m is None


def test_certify_rejects_off_family():
    with pytest.raises(OffFamilyError):
        certify(MapParams(1, 1, 1))


def test_certify_verdict_case_split():
    alphas = np.linspace(PI / 3, 5 * PI / 3, 15)
    for alpha in alphas:
        cert = certify(family_from_alpha(float(alpha)).params)
        if alpha in (alphas[0], alphas[-1]):
            assert cert.verdict is Verdict.BOUNDARY
        elif alpha == alphas[7]:  # midpoint: alpha = pi
            assert cert.verdict is Verdict.OPTIMAL_ONLY
        else:
            assert cert.verdict is Verdict.INDECOMPOSABLE_OPTIMAL


def test_certificates_are_scale_invariant():
    # Scaling the witness leaves the span matrices untouched and keeps every
    # pair expectation at roundoff level, so the verdict inputs do not move.
    p = family_from_alpha(2.5).params
    t = p.c / (1 - p.a)
    w = witness_matrix(p).mat
    pairs = product_vectors(t)
    e0 = np.zeros(9)
    e0[0] = 1.0
    for scale in (0.25, 1.0, 80.0):
        # Linearity, checked on a vector the witness does not annihilate.
        assert expectation(scale * w, e0) == pytest.approx(
            scale * expectation(w, e0), rel=1e-14
        )
        scaled_max = max(
            abs(expectation(scale * w, kron_vec(q.psi, q.phi))) for q in pairs
        )
        assert scaled_max <= 1e-8
    assert certify(p).verdict is Verdict.INDECOMPOSABLE_OPTIMAL
