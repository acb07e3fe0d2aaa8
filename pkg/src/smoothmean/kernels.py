"""Exact evaluation of the noise-smoothed truncation E psi(a + b*W).

For W drawn from the unit Normal, a Weibull(shape, scale), or a Student-t
family, the expectation of the soft-truncated affine form reduces to the
partial raw moments

    M_k(u) = E W^k 1{a + b*W <= u},   k = 0..3,

evaluated at u = +/- sqrt(2). Each family below supplies closed forms for
M_k under (a, b) = (0, 1); shifted arguments reduce to the base case with
a sign dispatch on b, and b = 0 degenerates to the plain truncation.
"""

import math
from dataclasses import dataclass
from typing import Union

from ._jit import jit
from .specfn import (
    _gamma,
    _lower_incomplete_gamma,
    _normal_cdf,
    _student_cdf,
    gamma_fn,
)
from .trunc import SATURATION, SQRT2, _trunc

__all__ = [
    "Normal01",
    "Weibull",
    "StudentT",
    "KernelFamily",
    "ShiftScalePair",
    "raw_moment",
    "base_moment_indicator",
    "shifted_moment_indicator",
    "d_term",
    "smoothed_trunc",
]

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class Normal01:
    """Standard Normal noise."""


@dataclass(frozen=True)
class Weibull:
    """Weibull noise with shape k > 0 and scale sigma > 0."""

    shape: float
    scale: float

    def __post_init__(self):
        if self.shape <= 0.0 or self.scale <= 0.0:
            raise ValueError(f"Weibull requires shape > 0 and scale > 0, got ({self.shape}, {self.scale})")


@dataclass(frozen=True)
class StudentT:
    """Student-t noise; dof > 5 so partial moments up to degree 3 exist in closed form."""

    dof: float

    def __post_init__(self):
        if self.dof <= 5.0:
            raise ValueError(f"StudentT requires dof > 5, got {self.dof}")


KernelFamily = Union[Normal01, Weibull, StudentT]


@dataclass(frozen=True)
class ShiftScalePair:
    """Per-datum shift a and scale b (any sign) of the smoothed argument a + b*W."""

    a: float
    b: float


# ---------------------------------------------------------------------------
# Base partial moments M_k(u) = E W^k 1{W <= u}
# ---------------------------------------------------------------------------


@jit
def _normal_base(u):
    m0 = _normal_cdf(u)
    m1 = -_INV_SQRT_2PI * math.exp(-0.5 * u * u)
    m2 = m0 + u * m1
    m3 = (u * u + 2.0) * m1
    return m0, m1, m2, m3


@jit
def _weibull_base(u, k, sigma):
    if u <= 0.0:
        return 0.0, 0.0, 0.0, 0.0
    z = (u / sigma) ** k
    ez = math.exp(-z)
    m0 = -math.expm1(-z)
    m1 = (sigma / k) * _lower_incomplete_gamma(1.0 / k, z) - u * ez
    m2 = (2.0 * sigma * sigma / k) * _lower_incomplete_gamma(2.0 / k, z) - u * u * ez
    m3 = (3.0 * sigma * sigma * sigma / k) * _lower_incomplete_gamma(3.0 / k, z) - u * u * u * ez
    return m0, m1, m2, m3


@jit
def _student_norm_const(dof):
    # Normalizer Gamma((dof+1)/2) / (sqrt(dof*pi) * Gamma(dof/2)) computed
    # through the gamma function directly for stability near dof = 5.
    return _gamma(0.5 * (dof + 1.0)) / (math.sqrt(dof * math.pi) * _gamma(0.5 * dof))


@jit
def _student_m1(u, dof):
    # Valid for dof > 3.
    a_d = _student_norm_const(dof)
    w = math.exp(-0.5 * (dof - 1.0) * math.log1p(u * u / dof))
    return -(dof / (dof - 1.0)) * a_d * w


@jit
def _student_base(u, dof):
    # Degrees 2 and 3 recurse once into the (dof - 2) family.
    a_d = _student_norm_const(dof)
    a_low = _student_norm_const(dof - 2.0)
    w = math.exp(-0.5 * (dof - 1.0) * math.log1p(u * u / dof))
    m0 = _student_cdf(u, dof)
    m1 = -(dof / (dof - 1.0)) * a_d * w
    u_low = u * math.sqrt((dof - 2.0) / dof)
    n0 = _student_cdf(u_low, dof - 2.0)
    n1 = _student_m1(u_low, dof - 2.0)
    ratio = a_d / a_low
    m2 = dof ** 1.5 / (math.sqrt(dof - 2.0) * (dof - 1.0)) * ratio * n0 - (dof / (dof - 1.0)) * a_d * u * w
    m3 = 2.0 * dof * dof / ((dof - 2.0) * (dof - 1.0)) * ratio * n1 - (dof / (dof - 1.0)) * a_d * u * u * w
    return m0, m1, m2, m3


# ---------------------------------------------------------------------------
# Smoothed truncation F(a, b) = E psi(a + b*W)
# ---------------------------------------------------------------------------
#
# With C = 2*sqrt(2)/3 and D_k = M_k(sqrt(2)) - M_k(-sqrt(2)):
#   F = C + M_0(sqrt(2))*(a - C - a^3/6) - M_0(-sqrt(2))*(a + C - a^3/6)
#       - (a^2/2 - 1)*b*D_1 - (a*b^2/2)*D_2 - (b^3/6)*D_3
# For b > 0, M_k(u) is the base moment at (u - a)/b; for b < 0 it is
# E W^k minus that, and the raw moments cancel inside every D_k.


@jit
def _combine(a, b, p0, p1, p2, p3, q0, q1, q2, q3):
    if b > 0.0:
        m0_hi = p0
        m0_lo = q0
        d1 = p1 - q1
        d2 = p2 - q2
        d3 = p3 - q3
    else:
        m0_hi = 1.0 - p0
        m0_lo = 1.0 - q0
        d1 = q1 - p1
        d2 = q2 - p2
        d3 = q3 - p3
    a3 = a * a * a / 6.0
    f0 = SATURATION + m0_hi * (a - SATURATION - a3) - m0_lo * (a + SATURATION - a3)
    f3 = (0.5 * a * a - 1.0) * b * d1 + 0.5 * a * b * b * d2 + b * b * b / 6.0 * d3
    return f0 - f3


@jit
def _fw_normal(a, b):
    if b == 0.0:
        return _trunc(a)
    z_hi = (SQRT2 - a) / b
    z_lo = (-SQRT2 - a) / b
    p0, p1, p2, p3 = _normal_base(z_hi)
    q0, q1, q2, q3 = _normal_base(z_lo)
    return _combine(a, b, p0, p1, p2, p3, q0, q1, q2, q3)


@jit
def _fw_weibull(a, b, k, sigma):
    if b == 0.0:
        return _trunc(a)
    z_hi = (SQRT2 - a) / b
    z_lo = (-SQRT2 - a) / b
    p0, p1, p2, p3 = _weibull_base(z_hi, k, sigma)
    q0, q1, q2, q3 = _weibull_base(z_lo, k, sigma)
    return _combine(a, b, p0, p1, p2, p3, q0, q1, q2, q3)


@jit
def _fw_student(a, b, dof):
    if b == 0.0:
        return _trunc(a)
    z_hi = (SQRT2 - a) / b
    z_lo = (-SQRT2 - a) / b
    p0, p1, p2, p3 = _student_base(z_hi, dof)
    q0, q1, q2, q3 = _student_base(z_lo, dof)
    return _combine(a, b, p0, p1, p2, p3, q0, q1, q2, q3)


# ---------------------------------------------------------------------------
# Public surface
# ---------------------------------------------------------------------------


def raw_moment(family: KernelFamily, k: int) -> float:
    """E W^k for k in 0..3."""
    if k not in (0, 1, 2, 3):
        raise ValueError(f"raw_moment supports k in 0..3, got {k}")
    if isinstance(family, Normal01):
        return (1.0, 0.0, 1.0, 0.0)[k]
    if isinstance(family, Weibull):
        return family.scale ** k * gamma_fn(1.0 + k / family.shape)
    if isinstance(family, StudentT):
        if k == 2:
            return family.dof / (family.dof - 2.0)
        return (1.0, 0.0, 0.0, 0.0)[k]
    raise TypeError(f"unknown kernel family: {family!r}")


def base_moment_indicator(family: KernelFamily, k: int, u: float) -> float:
    """Partial raw moment E W^k 1{W <= u} at unit shift/scale."""
    if k not in (0, 1, 2, 3):
        raise ValueError(f"base_moment_indicator supports k in 0..3, got {k}")
    if isinstance(family, Normal01):
        return _normal_base(u)[k]
    if isinstance(family, Weibull):
        return _weibull_base(u, family.shape, family.scale)[k]
    if isinstance(family, StudentT):
        return _student_base(u, family.dof)[k]
    raise TypeError(f"unknown kernel family: {family!r}")


def shifted_moment_indicator(family: KernelFamily, k: int, pair: ShiftScalePair, u: float) -> float:
    """E W^k 1{a + b*W <= u}, reduced to the base case by the sign of b."""
    if pair.b == 0.0:
        raise ValueError("shifted_moment_indicator is undefined at b = 0; use smoothed_trunc")
    z = (u - pair.a) / pair.b
    if pair.b > 0.0:
        return base_moment_indicator(family, k, z)
    return raw_moment(family, k) - base_moment_indicator(family, k, z)


def d_term(family: KernelFamily, k: int, pair: ShiftScalePair, u: float) -> float:
    """Two-sided difference of shifted partial moments at +/- u."""
    return shifted_moment_indicator(family, k, pair, u) - shifted_moment_indicator(family, k, pair, -u)


def smoothed_trunc(family: KernelFamily, pair: ShiftScalePair) -> float:
    """E psi(a + b*W): the noise-smoothed soft truncation, in [-2*sqrt(2)/3, 2*sqrt(2)/3]."""
    if isinstance(family, Normal01):
        return _fw_normal(pair.a, pair.b)
    if isinstance(family, Weibull):
        return _fw_weibull(pair.a, pair.b, family.shape, family.scale)
    if isinstance(family, StudentT):
        return _fw_student(pair.a, pair.b, family.dof)
    raise TypeError(f"unknown kernel family: {family!r}")
