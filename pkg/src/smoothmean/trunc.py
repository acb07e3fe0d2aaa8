"""Soft truncation: the bounded, odd, cubic-saturating influence function.

The function equals u - u^3/6 on [-sqrt(2), sqrt(2)] and saturates at
+/- 2*sqrt(2)/3 outside; both branches agree at the breakpoints, and the
closed interval is assigned to the cubic branch.
"""

import math

from ._jit import jit

__all__ = ["SATURATION", "SQRT2", "trunc", "trunc_indicator_form"]

SQRT2 = math.sqrt(2.0)
# Saturation level 2*sqrt(2)/3, the value of u - u^3/6 at u = sqrt(2).
SATURATION = 2.0 * math.sqrt(2.0) / 3.0


@jit
def _trunc(u):
    if u > SQRT2:
        return SATURATION
    if u < -SQRT2:
        return -SATURATION
    return u - u * u * u / 6.0


def trunc(u: float) -> float:
    """Soft truncation of u; odd, nondecreasing, bounded by 2*sqrt(2)/3."""
    return _trunc(u)


def trunc_indicator_form(u: float) -> float:
    """Same function written with indicator factors instead of a case split.

    Kept as an executable cross-check of the algebra used by the smoothed
    kernels, which expand exactly this representation.
    """
    below_hi = 1.0 if u <= SQRT2 else 0.0
    below_lo = 1.0 if u < -SQRT2 else 0.0
    cubic = u - u * u * u / 6.0
    return cubic * (below_hi - below_lo) + SATURATION * (1.0 - below_hi - below_lo)
