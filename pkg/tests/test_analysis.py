"""Fixed points, thresholds, and the exact integer certificates."""

import math
import random
from fractions import Fraction

from pytest import approx

from magicdist.analysis import (
    Stability,
    derivative_at,
    fixed_point_identity_sum,
    fixed_point_polynomial,
    fixed_points,
    instability_report,
    scan_map_fixed_points,
    scan_map_threshold,
    threshold_p,
    threshold_report,
)
from magicdist.codes import golay_S, random_code_support, rm15_S, span_codewords, steane_S
from magicdist.distill import distillation_map
from magicdist.knownmaps import bk15_pout, bk15_threshold, t5_map, t5_threshold

ISQ2 = 1.0 / math.sqrt(2.0)


# ===== 1. the 7-qubit map ============================================


def test_steane_fixed_points_are_exact():
    pts = fixed_points(distillation_map(steane_S()))
    assert [fp.x_star for fp in pts] == [0.0, 0.5, ISQ2]
    assert [fp.derivative for fp in pts] == [0.0, approx(1.4), approx(7 / 9)]
    assert [fp.stability for fp in pts] == [
        Stability.STABLE,
        Stability.UNSTABLE,
        Stability.STABLE,
    ]


def test_steane_threshold_report():
    rep = threshold_report(distillation_map(steane_S()))
    assert rep.x_threshold == 0.5
    assert rep.p_threshold == approx((2.0 - math.sqrt(2.0)) / 4.0, abs=1e-15)
    assert rep.attractor_x == approx(ISQ2, abs=1e-15)
    assert rep.attractor_is_target
    assert threshold_p(distillation_map(steane_S())) == rep.p_threshold


def test_steane_exact_derivatives():
    m = distillation_map(steane_S())
    assert derivative_at(m, Fraction(1, 2)) == Fraction(7, 5)
    assert derivative_at(m, Fraction(0)) == Fraction(0)


# ===== 2. the 23-qubit map ===========================================


def test_golay_fixed_point_structure():
    pts = fixed_points(distillation_map(golay_S()))
    assert len(pts) == 4
    xs = [fp.x_star for fp in pts]
    assert xs[0] == 0.0 and xs[1] == 0.5 and xs[3] == approx(ISQ2, abs=1e-12)
    assert abs(xs[2] - 0.62292) <= 5e-5
    assert [fp.stability for fp in pts] == [
        Stability.STABLE,
        Stability.UNSTABLE,
        Stability.STABLE,
        Stability.UNSTABLE,
    ]
    assert pts[1].derivative == approx(1.36405648, abs=1e-6)
    assert pts[3].derivative == approx(1.03489, abs=1e-4)


def test_golay_attractor_falls_short_of_the_target():
    rep = threshold_report(distillation_map(golay_S()))
    assert rep.p_threshold == approx((2.0 - math.sqrt(2.0)) / 4.0, abs=1e-12)
    assert abs(rep.attractor_x - 0.62292) <= 5e-5
    assert not rep.attractor_is_target


def test_fixed_point_residuals_are_tiny():
    for S in (steane_S(), golay_S(), rm15_S()):
        m = distillation_map(S)
        g = fixed_point_polynomial(m)
        for fp in fixed_points(m):
            assert abs(g(fp.x_star)) < 1e-12


# ===== 3. a marginal map =============================================


def test_marginal_fixed_point_is_reported():
    # span{0110} in 4 qubits has f'(0) = 1 exactly
    pts = fixed_points(distillation_map(span_codewords([0b0110], 4)))
    assert pts[0].x_star == 0.0
    assert pts[0].derivative == approx(1.0, abs=1e-12)
    assert pts[0].stability is Stability.MARGINAL


# ===== 4. exact integer certificates =================================


def test_certificates_on_builtin_codes():
    for S in (steane_S(), golay_S(), rm15_S()):
        assert fixed_point_identity_sum(S) == 0
        rep = instability_report(S)
        assert rep.identity_sum == 0
        assert rep.consistent
    # the two distilling maps expand at x = 1/2
    assert instability_report(steane_S()).instability_sum > 0
    assert instability_report(golay_S()).instability_sum > 0
    assert instability_report(
        steane_S()
    ).polynomial_derivative_at_half == Fraction(7, 5)


def test_certificates_on_random_supports():
    rng = random.Random(5)
    for _ in range(20):
        S = random_code_support(rng.randint(3, 8), rng)
        rep = instability_report(S)
        assert rep.identity_sum == 0
        assert rep.consistent


# ===== 5. numeric scans of the reference maps ========================


def test_scan_finds_the_bk15_threshold():
    pts = scan_map_fixed_points(bk15_pout)
    assert [q.stability for q in pts] == [
        Stability.STABLE,
        Stability.UNSTABLE,
        Stability.STABLE,
    ]
    assert pts[1].p_star == approx(bk15_threshold(), abs=1e-9)
    assert scan_map_threshold(bk15_pout) == approx(0.14148029265616732, abs=1e-9)


def test_scan_finds_the_t5_fixed_point():
    exact = (1.0 - math.sqrt(3.0 / 7.0)) / 2.0
    assert scan_map_threshold(t5_map) == approx(exact, abs=1e-9)
    assert t5_threshold() == approx(exact, abs=1e-14)
    assert scan_map_threshold(lambda p: 0.5 * p) is None
