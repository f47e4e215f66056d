"""Span certificates of witness optimality on the one-parameter family.

For each t > 0 there are nine product-vector pairs (psi_k, phi_k) whose
products psi_k (x) phi_k have zero witness expectation, and whose conjugated
products psi_k (x) conj(phi_k) have zero expectation in the partially
transposed witness.  When either set of nine vectors spans C^9 the
corresponding witness is certified optimal; when both do, the witness is
certified indecomposable optimal.  The 9x9 matrices collecting the vectors
as columns have analytic determinants, which serve as a cross-check on the
assembled matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import BoundaryCaseError, NonpositiveTError, OffFamilyError
from .linalg import (
    conj_vec,
    expectation,
    kron_vec,
    lu_det,
    partial_transpose_second,
    rank_with_tol,
)
from .maps import BOUNDARY_TOL, MapParams, on_family_check, t_param
from .witness import witness_matrix

#: Family-membership tolerance used by the guards in this module.
ON_FAMILY_TOL = 1e-8

#: Window around t = 1 inside which the conjugated span matrix is
#: expected to be rank deficient (its determinant vanishes to third order).
T_ONE_WINDOW = 1e-6

_T1_NOTE = (
    "span test for the partially transposed witness degenerates at t = 1; "
    "optimality of that side is not decided by this certificate"
)


class Verdict(str, Enum):
    INDECOMPOSABLE_OPTIMAL = "IndecomposableOptimal"
    OPTIMAL_ONLY = "OptimalOnly"
    BOUNDARY = "Boundary"
    NOT_CERTIFIED = "NotCertified"


@dataclass(frozen=True)
class ProductVectorPair:
    """Pair number k in 1..9 with its two vectors in C^3."""

    k: int
    psi: np.ndarray
    phi: np.ndarray


@dataclass(frozen=True)
class SpanMatrix:
    """9x9 matrix whose column k-1 is psi_k (x) phi_k (conjugated: (x) conj(phi_k))."""

    mat: np.ndarray
    t: float
    conjugated: bool


@dataclass(frozen=True)
class ZeroExpectations:
    """Maxima over k of the absolute witness expectations on the nine pairs."""

    max_w: float
    max_wgamma: float


@dataclass(frozen=True)
class CertificateDiagnostics:
    """Numbers backing a certificate; all None on the a = 1 boundary.

    Determinants and ranks refer to the column-normalized span matrices, so
    they are independent of the overall witness and vector scales.
    """

    max_abs_expectation_w: float | None
    max_abs_expectation_wgamma: float | None
    det_m: complex | None
    det_mprime: complex | None
    rank_m: int | None
    rank_mprime: int | None
    note: str | None = None


@dataclass(frozen=True)
class Certificate:
    """Optimality verdict for one parameter triple."""

    params: MapParams
    t: float | None
    w_optimal: bool
    wgamma_optimal: bool
    verdict: Verdict
    diagnostics: CertificateDiagnostics


def _check_t(t) -> float:
    t = float(t)
    if not (math.isfinite(t) and t > 0):
        raise NonpositiveTError(f"t must be a positive finite real, got {t!r}")
    return t


def product_vectors(t) -> list[ProductVectorPair]:
    """The nine product-vector pairs for a given t > 0."""
    t = _check_t(t)
    s = math.sqrt(t)
    psi = [
        [1, 1, 1],
        [1, -1, 1],
        [1, 1j, -1j],
        [0, s, 1],
        [0, s, 1j],
        [1, 0, s],
        [1j, 0, s],
        [s, 1, 0],
        [s, 1j, 0],
    ]
    phi = [
        [1, 1, 1],
        [1, -1, 1],
        [1, -1j, 1j],
        [0, s, t],
        [0, s, -t * 1j],
        [t, 0, s],
        [-t * 1j, 0, s],
        [s, t, 0],
        [s, -t * 1j, 0],
    ]
    return [
        ProductVectorPair(
            k=k + 1,
            psi=np.asarray(psi[k], dtype=complex),
            phi=np.asarray(phi[k], dtype=complex),
        )
        for k in range(9)
    ]


def span_matrix(t, conjugated: bool) -> SpanMatrix:
    """Assemble the 9x9 span matrix for t; columns follow the pair order k = 1..9."""
    t = _check_t(t)
    pairs = product_vectors(t)
    cols = [
        kron_vec(pair.psi, conj_vec(pair.phi) if conjugated else pair.phi)
        for pair in pairs
    ]
    return SpanMatrix(mat=np.column_stack(cols), t=t, conjugated=conjugated)


def det_closed_form(t, conjugated: bool) -> complex:
    """Analytic determinant of the span matrix as a function of t.

    The conjugated variant vanishes only at t = 1 (to third order in t - 1);
    the plain variant is nonzero for every t > 0.
    """
    t = _check_t(t)
    s = math.sqrt(t)
    if conjugated:
        part = -8.0 * t**4 * s * (t - 1.0) ** 3
        return complex(part, part)
    re = 8.0 * t**4 * (t**2 - 1.0) * s * (2.0 * t - s + 2.0)
    im = -8.0 * t**5 * (1.0 + t) * (t - 4.0 * s + 1.0)
    return complex(re, im)


def _max_abs_expectations(wmat: np.ndarray, t: float) -> ZeroExpectations:
    wgamma = partial_transpose_second(wmat)
    max_w = 0.0
    max_wg = 0.0
    for pair in product_vectors(t):
        v = kron_vec(pair.psi, pair.phi)
        vg = kron_vec(pair.psi, conj_vec(pair.phi))
        max_w = max(max_w, abs(expectation(wmat, v)))
        max_wg = max(max_wg, abs(expectation(wgamma, vg)))
    return ZeroExpectations(max_w=max_w, max_wgamma=max_wg)


def _require_family_interior(p: MapParams) -> float:
    if not on_family_check(p, ON_FAMILY_TOL):
        raise OffFamilyError(
            f"(a,b,c)=({p.a!r},{p.b!r},{p.c!r}) does not satisfy the family conditions"
        )
    if p.a >= 1.0 - BOUNDARY_TOL:
        raise BoundaryCaseError("the a = 1 boundary has no t parameter")
    return t_param(p)


def zero_expectation_check(p: MapParams) -> ZeroExpectations:
    """Verify the nine pairs annihilate the witness and its partial transpose.

    Requires p on the family with a < 1; both maxima are at roundoff level
    there (below 1e-10).
    """
    t = _require_family_interior(p)
    return _max_abs_expectations(witness_matrix(p).mat, t)


def _normalize_columns(mat: np.ndarray) -> np.ndarray:
    return mat / np.linalg.norm(mat, axis=0, keepdims=True)


def certify(p: MapParams, tol: float = 1e-8) -> Certificate:
    """Issue the optimality certificate for a family point.

    On the a = 1 boundary the verdict is Boundary and no numbers are
    produced.  Otherwise each witness side is certified optimal when its
    nine expectations vanish within tol and its column-normalized span
    matrix has full rank at relative tolerance tol; both sides together
    give IndecomposableOptimal.  A failed test yields OptimalOnly or
    NotCertified, which mean "not certified by this test", never a proof
    of non-optimality.
    """
    if not (tol > 0):
        raise ValueError("tol must be positive")
    if not on_family_check(p, max(tol, ON_FAMILY_TOL)):
        raise OffFamilyError(
            f"(a,b,c)=({p.a!r},{p.b!r},{p.c!r}) does not satisfy the family conditions"
        )
    if p.a >= 1.0 - BOUNDARY_TOL:
        return Certificate(
            params=p,
            t=None,
            w_optimal=False,
            wgamma_optimal=False,
            verdict=Verdict.BOUNDARY,
            diagnostics=CertificateDiagnostics(
                max_abs_expectation_w=None,
                max_abs_expectation_wgamma=None,
                det_m=None,
                det_mprime=None,
                rank_m=None,
                rank_mprime=None,
            ),
        )

    t = t_param(p)
    exps = _max_abs_expectations(witness_matrix(p).mat, t)
    m_norm = _normalize_columns(span_matrix(t, conjugated=False).mat)
    mp_norm = _normalize_columns(span_matrix(t, conjugated=True).mat)
    rank_m = rank_with_tol(m_norm, tol)
    rank_mp = rank_with_tol(mp_norm, tol)
    w_optimal = exps.max_w <= tol and rank_m == 9
    wgamma_optimal = exps.max_wgamma <= tol and rank_mp == 9
    if w_optimal and wgamma_optimal:
        verdict = Verdict.INDECOMPOSABLE_OPTIMAL
    elif w_optimal:
        verdict = Verdict.OPTIMAL_ONLY
    else:
        verdict = Verdict.NOT_CERTIFIED
    note = _T1_NOTE if (abs(t - 1.0) <= T_ONE_WINDOW and rank_mp < 9) else None
    return Certificate(
        params=p,
        t=t,
        w_optimal=w_optimal,
        wgamma_optimal=wgamma_optimal,
        verdict=verdict,
        diagnostics=CertificateDiagnostics(
            max_abs_expectation_w=exps.max_w,
            max_abs_expectation_wgamma=exps.max_wgamma,
            det_m=lu_det(m_norm),
            det_mprime=lu_det(mp_norm),
            rank_m=rank_m,
            rank_mprime=rank_mp,
            note=note,
        ),
    )
