"""Fixed points, stability, and thresholds of exact distillation maps.

One distillation round along the code's magic axis is a ratio of exact
rational polynomials f(x) = N(x) / D(x) with D the acceptance.  Fixed
points are the roots of g(x) = N(x) - x D(x) on [0, 1/sqrt(2)]; the exact
quotient-rule derivative f'(x*) = (N' D - N D') / D^2 decides whether
iteration converges toward a root (|f'| < 1) or escapes it (|f'| > 1).

Two exact integer certificates come straight off the pair-weight table:
an identity sum that vanishes for every admissible code (so x = 1/2 is
always a fixed point of the twirled axis map), and an instability sum
whose sign matches f'(1/2) - 1.  The latter is computed independently of
the polynomial machinery and cross-checked against it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable

from .bloch import ISQ2
from .codes import CodewordSet, pair_weight_table
from .distill import DistillationMap, distillation_map
from .ratpoly import RationalPolynomial

GRID_POINTS = 10_000
BISECT_TOL = 1e-13
MARGINAL_TOL = 1e-9


# ===== 1. fixed points of the exact axis map =========================


class Stability(Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    MARGINAL = "marginal"


@dataclass(frozen=True)
class FixedPoint:
    """A fixed point of the one-round map, classified by its derivative."""

    x_star: float
    derivative: float
    stability: Stability

    @property
    def p_star(self) -> float:
        """The same point in error-rate coordinates p = (1 - sqrt(2) x)/2."""
        return max(0.0, (1.0 - math.sqrt(2.0) * self.x_star) / 2.0)


def _classify(derivative: float) -> Stability:
    if abs(derivative - 1.0) < MARGINAL_TOL:
        return Stability.MARGINAL
    return Stability.STABLE if abs(derivative) < 1.0 else Stability.UNSTABLE


def fixed_point_polynomial(m: DistillationMap) -> RationalPolynomial:
    """g(x) = N(x) - x D(x); the axis map's fixed points are its roots."""
    return m.axis_num - m.accept.shifted(1)


def derivative_at(m: DistillationMap, x) -> Fraction | float:
    """f'(x) of the axis map by the quotient rule; exact on exact inputs."""
    num, den = m.axis_num, m.accept
    d = den(x)
    if d == 0:
        raise ZeroDivisionError(f"acceptance vanishes at x = {x}")
    return (num.derivative()(x) * d - num(x) * den.derivative()(x)) / (d * d)


def _value_at_h_point(poly: RationalPolynomial) -> tuple[Fraction, Fraction]:
    """Exact poly(1/sqrt(2)) as (a, b) meaning a + b/sqrt(2).

    Splitting even and odd powers makes "is 1/sqrt(2) a root?" an exact
    question: the value vanishes iff both rational parts do.
    """
    a = Fraction(0)
    b = Fraction(0)
    for k, c in enumerate(poly.coeffs):
        part = c * Fraction(1, 2 ** (k // 2))
        if k % 2:
            b += part
        else:
            a += part
    return a, b


def fixed_points(
    m: DistillationMap, *, grid: int = GRID_POINTS, tol: float = BISECT_TOL
) -> list[FixedPoint]:
    """All fixed points of the axis map on [0, 1/sqrt(2)], sorted by x.

    Sign scan on a uniform grid plus bisection to `tol`.  The three
    structurally meaningful points (0, 1/2, and the target 1/sqrt(2)) are
    additionally tested exactly in rational arithmetic, so they are
    reported even when float evaluation straddles zero at an endpoint.
    Each root is classified by the exact quotient-rule derivative,
    evaluated in rational arithmetic at the (rounded) root.
    """
    g = fixed_point_polynomial(m)
    zero_is_root = g(Fraction(0)) == 0
    half_is_root = g(Fraction(1, 2)) == 0
    ha, hb = _value_at_h_point(g)
    h_is_root = ha == 0 and hb == 0

    xs = [ISQ2 * i / grid for i in range(grid + 1)]
    vals = [g(x) for x in xs]
    roots: list[float] = []
    for i in range(grid):
        lo, hi = xs[i], xs[i + 1]
        flo, fhi = vals[i], vals[i + 1]
        if flo == 0.0:
            if i:  # the x = 0 endpoint is handled exactly above
                roots.append(lo)
            continue
        if fhi == 0.0 or flo * fhi > 0:
            continue
        while hi - lo > tol:
            mid = (lo + hi) / 2.0
            fm = g(mid)
            if fm == 0.0:
                lo = hi = mid
                break
            if flo * fm < 0:
                hi = mid
            else:
                lo, flo = mid, fm
        roots.append((lo + hi) / 2.0)

    # Snap numeric roots onto the exactly-verified points, then merge and
    # append any exact root the float scan failed to bracket.
    snapped = []
    for r in roots:
        if zero_is_root and abs(r) < 1e-6:
            r = 0.0
        elif half_is_root and abs(r - 0.5) < 1e-6:
            r = 0.5
        elif h_is_root and abs(r - ISQ2) < 1e-6:
            r = ISQ2
        snapped.append(r)
    for flag, val in ((zero_is_root, 0.0), (half_is_root, 0.5), (h_is_root, ISQ2)):
        if flag and not any(abs(r - val) < 1e-9 for r in snapped):
            snapped.append(val)
    snapped.sort()
    merged: list[float] = []
    for r in snapped:
        if not merged or r - merged[-1] > 1e-9:
            merged.append(r)

    points = []
    for r in merged:
        d = derivative_at(m, Fraction(r))
        points.append(FixedPoint(x_star=r, derivative=float(d), stability=_classify(float(d))))
    return points


# ===== 2. thresholds =================================================


@dataclass(frozen=True)
class ThresholdReport:
    """Threshold plus where iteration actually lands below it.

    attractor_x is the first stable fixed point past the threshold toward
    x = 1/sqrt(2); when it is not the target itself (attractor_is_target
    False), distillation converges short of the pure state and the output
    needs further processing by another code.
    """

    p_threshold: float
    x_threshold: float
    attractor_x: float | None
    attractor_is_target: bool
    points: tuple[FixedPoint, ...]


def threshold_report(m: DistillationMap) -> ThresholdReport | None:
    """Threshold of the axis map, or None when no unstable point exists.

    The threshold is the smallest unstable fixed point above 0 in
    error-rate coordinates (equivalently the largest unstable x below the
    target); inputs with p below it improve round over round.
    """
    pts = fixed_points(m)
    unstable = [
        fp for fp in pts if fp.stability is Stability.UNSTABLE and fp.p_star > 1e-12
    ]
    if not unstable:
        return None
    thr = max(unstable, key=lambda fp: fp.x_star)
    above = [
        fp
        for fp in pts
        if fp.x_star > thr.x_star + 1e-9 and fp.stability is Stability.STABLE
    ]
    attractor = min(above, key=lambda fp: fp.x_star) if above else None
    return ThresholdReport(
        p_threshold=thr.p_star,
        x_threshold=thr.x_star,
        attractor_x=None if attractor is None else attractor.x_star,
        attractor_is_target=attractor is not None
        and abs(attractor.x_star - ISQ2) < 1e-9,
        points=tuple(pts),
    )


def threshold_p(m: DistillationMap) -> float | None:
    """Error-rate threshold of the map; None when it has no unstable point."""
    report = threshold_report(m)
    return None if report is None else report.p_threshold


# ===== 3. exact integer certificates =================================


def _table_exponents(n: int, wa: int, wb: int, wc: int) -> tuple[int, int, int, int]:
    if (wa + wb + wc) % 2:
        raise ValueError(f"half-integer exponent from weight triple {(wa, wb, wc)}")
    n11 = (wa + wb - wc) // 2
    n01 = (wc + wb - wa) // 2
    n10 = (wc + wa - wb) // 2
    return n - n11 - n01 - n10, n11, n01, n10


def fixed_point_identity_sum(S: CodewordSet) -> int:
    """Exact certificate that x = 1/2 is fixed by the twirled axis map.

    Sum over ordered codeword pairs of 2*3^n11 - 3^n01 - 3^n10; it
    vanishes for every admissible S because the pair-weight table is
    symmetric under swapping a with b and under (a, b) -> (a, a^b).
    """
    total = 0
    for (wa, wb, wc), count in pair_weight_table(S).items():
        _, n11, n01, n10 = _table_exponents(S.n, wa, wb, wc)
        total += count * (2 * 3**n11 - 3**n01 - 3**n10)
    return total


@dataclass(frozen=True)
class StabilityReport:
    """Exact instability certificate for x = 1/2, with a cross-check.

    instability_sum is positive exactly when the axis map expands at
    x = 1/2; polynomial_derivative_at_half is the independent quotient-rule
    value, and `consistent` records that the two verdicts agree.
    """

    identity_sum: int
    instability_sum: int
    polynomial_derivative_at_half: Fraction
    consistent: bool


def instability_report(S: CodewordSet) -> StabilityReport:
    """Evaluate both exact sums and cross-check against f'(1/2).

    instability_sum = sum over ordered pairs of
    (4n - 1 - 2(wa + wb + 2 wc)) 3^n11 - 3^n00.
    """
    n = S.n
    identity = 0
    instability = 0
    for (wa, wb, wc), count in pair_weight_table(S).items():
        n00, n11, n01, n10 = _table_exponents(n, wa, wb, wc)
        identity += count * (2 * 3**n11 - 3**n01 - 3**n10)
        instability += count * ((4 * n - 1 - 2 * (wa + wb + 2 * wc)) * 3**n11 - 3**n00)
    derivative = derivative_at(distillation_map(S), Fraction(1, 2))
    sum_verdict = (instability > 0) - (instability < 0)
    derivative_verdict = (derivative > 1) - (derivative < 1)
    return StabilityReport(
        identity_sum=identity,
        instability_sum=instability,
        polynomial_derivative_at_half=derivative,
        consistent=sum_verdict == derivative_verdict,
    )


# ===== 4. numeric scan for closed-form maps ==========================


@dataclass(frozen=True)
class MapFixedPoint:
    """A fixed point of a numeric p -> p_out map (stencil derivative)."""

    p_star: float
    derivative: float
    stability: Stability


def _stencil_derivative(
    f: Callable[[float], float], p: float, lo: float, hi: float, h: float = 1e-5
) -> float:
    """Five-point derivative of f at p, shifted one-sided near the ends."""
    if p - 2 * h < lo:
        f0, f1, f2, f3, f4 = (f(p + k * h) for k in range(5))
        return (-25 * f0 + 48 * f1 - 36 * f2 + 16 * f3 - 3 * f4) / (12 * h)
    if p + 2 * h > hi:
        f0, f1, f2, f3, f4 = (f(p - k * h) for k in range(5))
        return (25 * f0 - 48 * f1 + 36 * f2 - 16 * f3 + 3 * f4) / (12 * h)
    return (f(p - 2 * h) - 8 * f(p - h) + 8 * f(p + h) - f(p + 2 * h)) / (12 * h)


def scan_map_fixed_points(
    f: Callable[[float], float],
    lo: float = 0.0,
    hi: float = 0.5,
    *,
    grid: int = GRID_POINTS,
    tol: float = BISECT_TOL,
) -> list[MapFixedPoint]:
    """Fixed points of a closed-form map by sign scan plus bisection.

    Serves the reference maps, which exist only as float formulas; the
    exact-polynomial path above is for code-derived maps.  Grid points
    where f(p) - p vanishes exactly (both ends, typically) count as roots.
    """

    def g(p: float) -> float:
        return f(p) - p

    xs = [lo + (hi - lo) * i / grid for i in range(grid + 1)]
    vals = [g(x) for x in xs]
    roots: list[float] = []
    for i in range(grid + 1):
        if vals[i] == 0.0:
            roots.append(xs[i])
    for i in range(grid):
        plo, phi = xs[i], xs[i + 1]
        flo, fhi = vals[i], vals[i + 1]
        if flo == 0.0 or fhi == 0.0 or flo * fhi > 0:
            continue
        while phi - plo > tol:
            mid = (plo + phi) / 2.0
            fm = g(mid)
            if fm == 0.0:
                plo = phi = mid
                break
            if flo * fm < 0:
                phi = mid
            else:
                plo, flo = mid, fm
        roots.append((plo + phi) / 2.0)

    roots.sort()
    merged: list[float] = []
    for r in roots:
        if not merged or r - merged[-1] > 1e-9:
            merged.append(r)
    return [
        MapFixedPoint(
            p_star=r,
            derivative=(d := _stencil_derivative(f, r, lo, hi)),
            stability=_classify(d),
        )
        for r in merged
    ]


def scan_map_threshold(
    f: Callable[[float], float], lo: float = 0.0, hi: float = 0.5
) -> float | None:
    """Smallest unstable fixed point above 0, or None if there is none."""
    unstable = [
        q
        for q in scan_map_fixed_points(f, lo, hi)
        if q.stability is Stability.UNSTABLE and q.p_star > 1e-12
    ]
    return min(q.p_star for q in unstable) if unstable else None
