"""Exact distillation maps on the H line, derived from pair-weight tables.

For a code S (even-weight, self-orthogonal, 1^n-free) the two logical basis
states are the uniform superpositions over S and over its complement coset.
Projecting n copies of a state on the H line x = z, y = 0 onto the logical
qubit and normalizing gives a one-dimensional map x -> x_out together with
the acceptance probability; both are exact rational polynomials in x.

The pair (|a|, |b|, |a^b|) determines the per-pair monomial exactly, so the
whole derivation runs off the pair-weight table:

    <a| rho^(x)n |b> = (1/2^n) (1+x)^n00 (1-x)^n11 x^(n01+n10)

with n00 = n - (wa+wb+wc)/2, n11 = (wa+wb-wc)/2, n01 = (wc+wb-wa)/2 and
n10 = (wc+wa-wb)/2 counting the four per-position letter combinations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bloch import SingleQubitDensity
from .codes import CodewordSet, PairWeightTable, pair_weight_table, validate_S
from .ratpoly import RationalPolynomial


def _exponents(n: int, wa: int, wb: int, wc: int) -> tuple[int, int, int, int]:
    """(n00, n11, n01, n10) for a weight triple; guards integrality."""
    if (wa + wb + wc) % 2:
        raise ValueError(f"half-integer exponent from triple {(wa, wb, wc)}")
    n11 = (wa + wb - wc) // 2
    n01 = (wc + wb - wa) // 2
    n10 = (wc + wa - wb) // 2
    n00 = n - n11 - n01 - n10
    if min(n00, n11, n01, n10) < 0:
        raise ValueError(f"impossible weight triple {(wa, wb, wc)} for n={n}")
    return n00, n11, n01, n10


# ===== 1. polynomial overlaps on the H line ==========================


def _hline_sum(table: PairWeightTable, transform) -> RationalPolynomial:
    """Sum count * (1+x)^n00 (1-x)^n11 x^(n01+n10) / (|S| 2^n) over the table,
    with the weight triple first mapped through `transform`."""
    n = table.n
    one_plus = [RationalPolynomial.one()]
    one_minus = [RationalPolynomial.one()]
    for _ in range(n):
        one_plus.append(one_plus[-1] * RationalPolynomial([1, 1]))
        one_minus.append(one_minus[-1] * RationalPolynomial([1, -1]))
    total = RationalPolynomial.zero()
    scale = Fraction(1, table.size * (1 << n))
    for (wa, wb, wc), count in table.items():
        n00, n11, n01, n10 = _exponents(n, *transform(wa, wb, wc))
        term = (one_plus[n00] * one_minus[n11]).shifted(n01 + n10)
        total = total + term * (scale * count)
    return total


def overlaps_h_line(
    S: CodewordSet,
) -> tuple[RationalPolynomial, RationalPolynomial, RationalPolynomial]:
    """Exact (P00, P11, P01) polynomials in x for states on the H line.

    P00 = <0L| rho^(x)n |0L>, P11 the same with both words complemented,
    P01 the cross term (real on the H line).
    """
    report = validate_S(S)
    if not report.ok:
        raise ValueError("; ".join(report.messages) or "invalid codeword set")
    n = S.n
    table = pair_weight_table(S)
    p00 = _hline_sum(table, lambda wa, wb, wc: (wa, wb, wc))
    p11 = _hline_sum(table, lambda wa, wb, wc: (n - wa, n - wb, wc))
    p01 = _hline_sum(table, lambda wa, wb, wc: (wa, n - wb, n - wc))
    return p00, p11, p01


@dataclass(frozen=True)
class DistillationMap:
    """The exact one-round map of a code on the H line.

    accept   -- probability of projecting onto the logical qubit
    xout_num -- numerator of x_out = 2 P01 / accept
    zout_num -- numerator of z_out = (P00 - P11) / accept
    xout_den -- shared denominator (== accept)

    For every code whose map preserves the H line (all built-ins),
    zout_num == xout_num exactly.  Fixed-point analysis uses the post-twirl
    axis coordinate (x_out + z_out)/2, which coincides with x_out for those
    codes and is the physically iterated quantity for the rest.
    """

    n: int
    accept: RationalPolynomial
    xout_num: RationalPolynomial
    zout_num: RationalPolynomial

    @property
    def xout_den(self) -> RationalPolynomial:
        return self.accept

    @property
    def hline_symmetric(self) -> bool:
        return self.xout_num == self.zout_num

    @property
    def axis_num(self) -> RationalPolynomial:
        """Numerator of the twirled axis coordinate (x_out + z_out)/2."""
        return (self.xout_num + self.zout_num) * Fraction(1, 2)


def distillation_map(S: CodewordSet) -> DistillationMap:
    p00, p11, p01 = overlaps_h_line(S)
    return DistillationMap(
        n=S.n,
        accept=p00 + p11,
        xout_num=p01 * 2,
        zout_num=p00 - p11,
    )


# ===== 2. evaluation and iteration ===================================


def evaluate_map(m: DistillationMap, x: float) -> tuple[float, float]:
    """(x_out, p_accept) at a float point; rejects a vanishing denominator."""
    den = m.accept(x)
    if den == 0:
        raise ZeroDivisionError(f"acceptance vanishes at x = {x}")
    return m.xout_num(x) / den, den


@dataclass(frozen=True)
class IterationStep:
    round: int
    x: float
    accept: float
    expected_copies: float


def iterate_map(m: DistillationMap, x0: float, rounds: int) -> list[IterationStep]:
    """Iterate the (twirled) axis map, tracking expected input copies.

    copies after round k multiply by n / p_accept at each stage: the run
    consumes n states per attempt and keeps the output with probability
    p_accept.
    """
    steps = [IterationStep(0, x0, m.accept(x0), 1.0)]
    x = x0
    copies = 1.0
    for k in range(1, rounds + 1):
        acc = m.accept(x)
        if acc <= 0:
            raise ZeroDivisionError(f"acceptance vanishes at x = {x}")
        copies *= m.n / acc
        x = m.axis_num(x) / acc
        steps.append(IterationStep(k, x, m.accept(x), copies))
    return steps


# ===== 3. general (off-line) overlaps ================================


@dataclass(frozen=True)
class OverlapTriple:
    """Numeric logical overlaps of rho^(x)n for an arbitrary single-qubit rho."""

    a00: complex
    a11: complex
    a01: complex


def overlap_general(S: CodewordSet, rho: SingleQubitDensity) -> OverlapTriple:
    """Logical overlaps for an arbitrary density matrix, off the H line too.

    Each ordered pair (a, b) contributes
    rho00^n00 rho11^n11 rho01^n01 rho10^n10, and the exponents only depend
    on the weight triple, so the pair-weight table again suffices.
    """
    rho.validate()
    report = validate_S(S)
    if not report.ok:
        raise ValueError("; ".join(report.messages) or "invalid codeword set")
    n = S.n
    table = pair_weight_table(S)

    def tally(transform) -> complex:
        total = 0j
        for (wa, wb, wc), count in table.items():
            n00, n11, n01, n10 = _exponents(n, *transform(wa, wb, wc))
            total += (
                count
                * rho.rho00**n00
                * rho.rho11**n11
                * rho.rho01**n01
                * rho.rho10**n10
            )
        return total / table.size

    return OverlapTriple(
        a00=tally(lambda wa, wb, wc: (wa, wb, wc)),
        a11=tally(lambda wa, wb, wc: (n - wa, n - wb, wc)),
        a01=tally(lambda wa, wb, wc: (wa, n - wb, n - wc)),
    )


def equator_round(S: CodewordSet, p: float) -> tuple[float, float]:
    """One projector round for a mixture on the equatorial magic axis.

    Input: Bloch (1-2p)(1,1,0)/sqrt(2).  Codes whose projector map does not
    preserve the x = z line (the 15-qubit Reed-Muller one, for instance)
    act naturally on this axis instead, possibly reflecting it; the output
    error is therefore read along the best-aligned magic direction.
    Returns (p_out, accept).
    """
    import math

    from .bloch import BlochVector, SingleQubitDensity, h_alignment

    a = (1.0 - 2.0 * p) / math.sqrt(2.0)
    rho = SingleQubitDensity(
        rho00=0.5, rho01=a * (1 - 1j) / 2.0, rho10=a * (1 + 1j) / 2.0, rho11=0.5
    )
    tr = overlap_general(S, rho)
    acc = (tr.a00 + tr.a11).real
    if acc <= 0:
        raise ZeroDivisionError(f"acceptance vanishes at p = {p}")
    out = BlochVector(
        x=2.0 * tr.a01.real / acc,
        y=-2.0 * tr.a01.imag / acc,
        z=(tr.a00 - tr.a11).real / acc,
    )
    return (1.0 - h_alignment(out)) / 2.0, acc


# ===== 4. error-rate sweeps ==========================================


@dataclass(frozen=True)
class SweepRow:
    p: float
    p_out: float
    delta: float
    accept: float


def sweep(m: DistillationMap, p_grid) -> list[SweepRow]:
    """Evaluate the map over error rates, reporting p_out, p_out - p, accept."""
    import math

    from .bloch import p_to_x

    rows = []
    for p in p_grid:
        x = p_to_x(p)
        x_out, acc = evaluate_map(m, x)
        # inline x -> p so codes that overshoot the H point still sweep
        p_out = (1.0 - math.sqrt(2.0) * x_out) / 2.0
        rows.append(SweepRow(p=p, p_out=p_out, delta=p_out - p, accept=acc))
    return rows


def sweep_code(S: CodewordSet, p_grid) -> list[SweepRow]:
    """Sweep a code along its own magic axis.

    If the projector map preserves the x = z line (Steane, Golay, any code
    with zout_num == xout_num) the exact polynomial map is used; otherwise
    each point runs the numeric equatorial round.
    """
    m = distillation_map(S)
    if m.hline_symmetric:
        return sweep(m, p_grid)
    rows = []
    for p in p_grid:
        p_out, acc = equator_round(S, p)
        rows.append(SweepRow(p=p, p_out=p_out, delta=p_out - p, accept=acc))
    return rows
