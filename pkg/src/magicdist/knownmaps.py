"""Closed-form reference distillation maps and the threshold constants.

Two earlier procedures serve as comparison curves: the 15-copy H-direction
recursion and the 5-copy T-direction recursion.  Both are single-shot
formulas in the input error rate p, no code machinery involved.
"""

from __future__ import annotations

import functools
import math


def bk15_pout(p: float) -> float:
    """Output error of the 15-copy H-direction procedure.

    p_out = (1 - 15u^7 + 15u^8 - u^15) / (2 (1 + 15u^8)) with u = 1 - 2p.
    Behaves like 35 p^3 for small p; fixed point near p = 0.14148.
    """
    if not 0.0 <= p <= 0.5:
        raise ValueError(f"error rate must lie in [0, 1/2]: {p}")
    u = 1.0 - 2.0 * p
    return (1.0 - 15.0 * u**7 + 15.0 * u**8 - u**15) / (2.0 * (1.0 + 15.0 * u**8))


def t5_map(p: float) -> float:
    """Output error of the 5-copy T-direction procedure.

    With t = p/(1-p): p_out = (t^5 + 5 t^2) / (1 + 5 t^2 + 5 t^3 + t^5).
    The formula is already a probability; its fixed point is exactly
    (1 - sqrt(3/7))/2.  Behaves like 5 p^2 for small p.
    """
    if not 0.0 <= p <= 0.5:
        raise ValueError(f"error rate must lie in [0, 1/2]: {p}")
    t = p / (1.0 - p)
    return (t**5 + 5.0 * t**2) / (1.0 + 5.0 * t**2 + 5.0 * t**3 + t**5)


def t5_threshold() -> float:
    """Exact fixed point of the 5-copy T map."""
    return (1.0 - math.sqrt(3.0 / 7.0)) / 2.0


def _bisect(f, lo: float, hi: float, tol: float = 1e-15) -> float:
    flo = f(lo)
    if flo == 0.0:
        return lo
    if f(hi) == 0.0:
        return hi
    if flo * f(hi) > 0:
        raise ValueError("no sign change on the bracket")
    while hi - lo > tol:
        mid = (lo + hi) / 2.0
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0:
            hi = mid
        else:
            lo, flo = mid, fm
    return (lo + hi) / 2.0


@functools.cache
def bk15_threshold() -> float:
    """Nontrivial fixed point of bk15_pout, about 0.14148."""
    return _bisect(lambda p: bk15_pout(p) - p, 0.05, 0.25)


def known_thresholds() -> dict[str, float]:
    """The named constants of the distillable-region map, for export."""
    from .bloch import D_O_FACE, D_T_PLANE, F_H_STAR

    return {
        "F_H_star": F_H_STAR,
        "p_H_new": (1.0 - 1.0 / math.sqrt(2.0)) / 2.0,
        "p_H_bk": bk15_threshold(),
        "p_T": t5_threshold(),
        "d_T_plane": D_T_PLANE,
        "d_O_face": D_O_FACE,
    }
