"""Acceptance suite: one test per criterion, each at its stated tolerance.

Every test prints a [PASS]/[FAIL] line (visible with ``pytest -s`` or in the
captured output of a failing run).
"""

import math
from contextlib import contextmanager

import numpy as np
import pytest

from choiwit import (
    MapParams,
    certify,
    det_closed_form,
    detect,
    family_from_alpha,
    herm_eig_min,
    identity_residuals,
    lu_det,
    max_ent_projector,
    partial_transpose_second,
    phi_apply,
    positivity_search,
    rank_with_tol,
    separable_sample_check,
    span_matrix,
    witness_from_map,
    witness_matrix,
    zero_expectation_check,
)
from choiwit.cli import main as cli_main
from oracles import eig3_min_cubic, random_hermitian

PI = math.pi


@contextmanager
def criterion(number, description):
    try:
        yield
    except Exception:
        print(f"[FAIL] criterion {number}: {description}")
        raise
    print(f"[PASS] criterion {number}: {description}")


def family_grid(n, interior=False):
    alphas = np.linspace(PI / 3, 5 * PI / 3, n + 2 if interior else n)
    if interior:
        alphas = alphas[1:-1]
    return [float(a) for a in alphas]


def test_criterion_1_construction_equivalence():
    with criterion(1, "witness_from_map equals witness_matrix within 1e-14"):
        rng = np.random.default_rng(100)
        worst = 0.0
        for _ in range(100):
            p = MapParams(*rng.uniform(0.0, 2.0, 3))
            worst = max(
                worst,
                float(np.abs(witness_from_map(p).mat - witness_matrix(p).mat).max()),
            )
        for alpha in family_grid(101):
            p = family_from_alpha(alpha).params
            worst = max(
                worst,
                float(np.abs(witness_from_map(p).mat - witness_matrix(p).mat).max()),
            )
        assert worst <= 1e-14


def test_criterion_2_zero_expectations():
    with criterion(2, "nine pairs annihilate W and W^Gamma within 1e-10 on the family"):
        worst_w = worst_wg = 0.0
        for alpha in family_grid(101, interior=True):
            point = family_from_alpha(alpha)
            result = zero_expectation_check(point.params)
            worst_w = max(worst_w, result.max_w)
            worst_wg = max(worst_wg, result.max_wgamma)
        assert worst_w <= 1e-10
        assert worst_wg <= 1e-10


def test_criterion_3_determinant_oracle():
    with criterion(3, "assembled determinants match the closed forms"):
        rng = np.random.default_rng(200)
        for t in rng.uniform(0.05, 20.0, 100):
            for conjugated in (False, True):
                numeric = lu_det(span_matrix(float(t), conjugated).mat)
                closed = det_closed_form(float(t), conjugated)
                assert abs(numeric - closed) <= 1e-8 * abs(closed) + 1e-8


def test_criterion_4_verdict_case_split():
    with criterion(4, "verdicts split exactly by the angle"):
        # 40 interior grid points (none at the midpoint), the midpoint
        # itself, and both endpoints.
        alphas = np.linspace(PI / 3, 5 * PI / 3, 42)
        for alpha in alphas[1:-1]:
            cert = certify(family_from_alpha(float(alpha)).params)
            assert cert.verdict.value == "IndecomposableOptimal", alpha
        mid = certify(family_from_alpha(PI).params)
        assert mid.verdict.value == "OptimalOnly"
        assert abs(mid.diagnostics.det_mprime) <= 1e-9
        assert mid.diagnostics.rank_mprime < 9
        for alpha in (alphas[0], alphas[-1]):
            cert = certify(family_from_alpha(float(alpha)).params)
            assert cert.verdict.value == "Boundary"


def test_criterion_5_witness_behavior():
    with criterion(5, "P+ detection value and separable sample floor"):
        projector = max_ent_projector()
        for alpha in family_grid(21):
            p = family_from_alpha(alpha).params
            w = witness_matrix(p)
            assert detect(w, projector) == pytest.approx((p.a - 2) / 6, abs=1e-12)
            assert separable_sample_check(w, n=10_000, seed=0) >= -1e-12


def test_criterion_6_predicate_vs_falsifier():
    with criterion(6, "positivity falsifier agrees with the predicate"):
        points = [MapParams(1, 1, 0), MapParams(0, 1, 1)]
        points += [family_from_alpha(a).params for a in family_grid(20)]
        for p in points:
            assert positivity_search(p, budget=200, seed=0).min_value >= -1e-9
        p = MapParams(0.5, 1.45, 0.05)
        result = positivity_search(p, budget=200, seed=0)
        assert result.min_value < -1e-3
        x = result.argmin
        assert herm_eig_min(phi_apply(p, np.outer(x, x.conj()))) < -1e-3


def test_criterion_7_identity_suite():
    with criterion(7, "family identities, involution, eigensolver oracle"):
        for alpha in family_grid(101, interior=True):
            point = family_from_alpha(alpha)
            r1, r2 = identity_residuals(point.params)
            assert abs(r1) <= 1e-10 and abs(r2) <= 1e-10
        rng = np.random.default_rng(300)
        for _ in range(100):
            h = random_hermitian(rng, 9)
            double = partial_transpose_second(partial_transpose_second(h))
            assert np.abs(double - h).max() <= 1e-14
        for _ in range(100):
            h = random_hermitian(rng, 3)
            assert abs(herm_eig_min(h) - eig3_min_cubic(h)) <= 1e-9


def test_criterion_8_cli_determinism(tmp_path):
    with criterion(8, "scan output is byte-identical and the midpoint reads OptimalOnly"):
        args = [
            "scan", "--alpha-start", "pi/3", "--alpha-end", "5pi/3", "--steps", "13",
        ]
        first = tmp_path / "first.csv"
        second = tmp_path / "second.csv"
        assert cli_main([*args, "--out", str(first)]) == 0
        assert cli_main([*args, "--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()
        rows = first.read_text().splitlines()
        midpoint = rows[7].split(",")
        assert midpoint[-1] == "OptimalOnly"
        # Rank consistency between serialized fields and the verdict.
        for row in rows[1:]:
            cells = row.split(",")
            if cells[-1] == "IndecomposableOptimal":
                assert cells[7] == "9" and cells[8] == "9"
