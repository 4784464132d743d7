"""Exact univariate polynomials over the rationals.

Everything downstream (distillation maps, fixed-point identities) is derived
in exact arithmetic; floats only appear when a polynomial is *evaluated* at a
float point.  Coefficients are `fractions.Fraction`, stored lowest power
first with trailing zeros trimmed.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Union

Scalar = Union[int, Fraction]


class RationalPolynomial:
    """Immutable polynomial with exact rational coefficients.

    >>> p = RationalPolynomial([1, 0, Fraction(1, 2)])
    >>> str(p)
    '1 + 1/2 x^2'
    >>> p(Fraction(2))
    Fraction(3, 1)
    """

    __slots__ = ("coeffs",)

    def __init__(self, coefficients: Iterable[Scalar] = ()):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(coeffs)

    # ── constructors ──────────────────────────────────────────────────

    @classmethod
    def zero(cls) -> "RationalPolynomial":
        return cls(())

    @classmethod
    def one(cls) -> "RationalPolynomial":
        return cls((1,))

    @classmethod
    def monomial(cls, power: int, coeff: Scalar = 1) -> "RationalPolynomial":
        if power < 0:
            raise ValueError("power must be >= 0")
        return cls((0,) * power + (coeff,))

    # ── basic structure ───────────────────────────────────────────────

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RationalPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == RationalPolynomial((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def coefficient(self, power: int) -> Fraction:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    # ── arithmetic ────────────────────────────────────────────────────

    def __add__(self, other: "RationalPolynomial | Scalar") -> "RationalPolynomial":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPolynomial(
            self.coefficient(k) + other.coefficient(k) for k in range(n)
        )

    __radd__ = __add__

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "RationalPolynomial | Scalar") -> "RationalPolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> "RationalPolynomial":
        return self._coerce(other) - self

    def __mul__(self, other: "RationalPolynomial | Scalar") -> "RationalPolynomial":
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial(c * other for c in self.coeffs)
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return RationalPolynomial.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RationalPolynomial":
        if n < 0:
            raise ValueError("negative power")
        result = RationalPolynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shifted(self, k: int) -> "RationalPolynomial":
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return RationalPolynomial((Fraction(0),) * k + self.coeffs)

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(
            k * c for k, c in enumerate(self.coeffs) if k > 0
        )

    # ── evaluation ────────────────────────────────────────────────────

    def __call__(self, x):
        """Horner evaluation; exact for int/Fraction inputs, float for floats."""
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc

    # ── display ───────────────────────────────────────────────────────

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c} x" if c != 1 else "x")
            else:
                parts.append(f"{c} x^{k}" if c != 1 else f"x^{k}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"RationalPolynomial({list(self.coeffs)!r})"

    def integer_form(self) -> tuple["RationalPolynomial", int]:
        """Return (q, d) with self = q/d, q integer with content coprime to d > 0."""
        if not self.coeffs:
            return self, 1
        denom = 1
        for c in self.coeffs:
            denom = denom * c.denominator // gcd(denom, c.denominator)
        nums = [int(c * denom) for c in self.coeffs]
        g = denom
        for v in nums:
            g = gcd(g, v)
        return RationalPolynomial(v // g for v in nums), denom // g

    @staticmethod
    def _coerce(value: "RationalPolynomial | Scalar") -> "RationalPolynomial":
        if isinstance(value, RationalPolynomial):
            return value
        return RationalPolynomial((value,))


def ratio_str(num: RationalPolynomial, den: RationalPolynomial) -> str:
    """Render num/den as "(…)/(…)" with cleared, jointly-reduced integer coefficients."""
    qn, dn = num.integer_form()
    qd, dd = den.integer_form()
    a = qn * dd  # num/den == (qn*dd) / (qd*dn) over the integers
    b = qd * dn
    g = 0
    for c in a.coeffs:
        g = gcd(g, int(c))
    for c in b.coeffs:
        g = gcd(g, int(c))
    g = g or 1
    # keep the denominator's first nonzero coefficient positive
    lead = next((c for c in b.coeffs if c != 0), Fraction(1))
    if lead < 0:
        g = -g
    a = a * Fraction(1, g)
    b = b * Fraction(1, g)
    if b.degree == 0:
        return f"({a})/{b.coefficient(0)}"
    return f"({a})/({b})"
