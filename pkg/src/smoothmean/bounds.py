"""Closed-form deviation half-widths and relative-entropy calculators.

Every bounded method gets a two-sided 1-2*delta half-width evaluated with
the same scale the estimator itself uses. KL values are exact for the
Bernoulli, Normal, and Weibull noise families; for Student-t noise the
exact KL has no closed form and the reported value is the closed-form
upper bound (flagged on the report).
"""

import math
from dataclasses import dataclass
from typing import Union

from .estimators import (
    EstimatorConfig,
    MomentInfo,
    _split_m,
    _student_params,
    _theta,
    _weibull_scale_add,
    _weibull_shape,
    bernoulli_halfwidth,
    bernoulli_kl,
    scale_for,
    student_kl_bound,
    weibull_mult_kl,
)
from .specfn import EULER_GAMMA, gamma_fn

__all__ = [
    "BernoulliNoise",
    "NormalNoise",
    "WeibullNoise",
    "StudentNoise",
    "NoiseSpec",
    "BoundReport",
    "kl",
    "deviation_bound",
    "BOUNDED_METHODS",
]

# Methods carrying a distribution-free deviation guarantee.
BOUNDED_METHODS = ("mom", "mest", "mult_b", "mult_bc", "mult_g", "mult_w", "mult_s", "add_g", "add_w", "add_s")

# Median-of-means sub-Gaussian constant.
MOM_CONSTANT = 2.0 * math.sqrt(2.0 * math.e)


@dataclass(frozen=True)
class BernoulliNoise:
    theta: float
    prior_theta: float = 0.5


@dataclass(frozen=True)
class NormalNoise:
    """Equal-precision Normal noise/prior pair; KL = precision*(mean gap)^2/2."""

    mean: float
    prior_mean: float
    precision: float


@dataclass(frozen=True)
class WeibullNoise:
    shape: float
    scale: float
    prior_shape: float
    prior_scale: float


@dataclass(frozen=True)
class StudentNoise:
    """Student-t noise shifted against a centered prior; KL reported as an upper bound."""

    dof: float
    shift: float


NoiseSpec = Union[BernoulliNoise, NormalNoise, WeibullNoise, StudentNoise]


def kl(noise: NoiseSpec) -> float:
    """Relative entropy of the noise against its prior (upper bound for Student)."""
    if isinstance(noise, BernoulliNoise):
        return bernoulli_kl(noise.theta, noise.prior_theta)
    if isinstance(noise, NormalNoise):
        if noise.precision <= 0.0:
            raise ValueError(f"precision must be positive, got {noise.precision}")
        gap = noise.mean - noise.prior_mean
        return 0.5 * noise.precision * gap * gap
    if isinstance(noise, WeibullNoise):
        k1, s1, k2, s2 = noise.shape, noise.scale, noise.prior_shape, noise.prior_scale
        if min(k1, s1, k2, s2) <= 0.0:
            raise ValueError("Weibull shapes and scales must be positive")
        return (
            math.log(k1) - k1 * math.log(s1)
            - (math.log(k2) - k2 * math.log(s2))
            + (k1 - k2) * (math.log(s1) - EULER_GAMMA / k1)
            + (s1 / s2) ** k2 * gamma_fn(k2 / k1 + 1.0)
            - 1.0
        )
    if isinstance(noise, StudentNoise):
        return student_kl_bound(noise.shift, noise.dof)
    raise TypeError(f"unknown noise spec: {noise!r}")


@dataclass(frozen=True)
class BoundReport:
    method: str
    epsilon: float
    kl_value: float
    scale_used: float | None
    kl_is_upper_bound: bool = False


def deviation_bound(config: EstimatorConfig, moments: MomentInfo) -> BoundReport:
    """Two-sided 1-2*delta deviation half-width for a bounded method."""
    method = config.method
    if method not in BOUNDED_METHODS:
        raise ValueError(f"method {method!r} carries no distribution-free deviation bound")

    n = moments.n
    m2 = moments.second_moment
    var = moments.variance
    delta = moments.delta
    log_inv = moments.log_inv_delta

    if method == "mom":
        if delta <= math.exp(1.0 - n / 2.0):
            raise ValueError(f"median-of-means bound requires delta > exp(1 - n/2); got delta={delta}, n={n}")
        eps = MOM_CONSTANT * math.sqrt(var) * math.sqrt((1.0 + log_inv) / n)
        return BoundReport(method, eps, 0.0, None)
    if method == "mest":
        s = scale_for(config, moments)
        eps = 2.0 * math.sqrt(2.0 * var * log_inv / n)
        return BoundReport(method, eps, 0.0, s)
    if method == "mult_b":
        s = scale_for(config, moments)
        theta = _theta(config, delta)
        eps = bernoulli_halfwidth(s, n, theta, m2, delta)
        return BoundReport(method, eps, bernoulli_kl(theta), s)
    if method == "mult_bc":
        s = scale_for(config, moments)
        m = _split_m(config, n)
        theta = _theta(config, delta)
        s1 = math.sqrt(m * m2 / (2.0 * log_inv))
        eps_m = bernoulli_halfwidth(s1, m, theta, m2, delta)
        eps = math.sqrt(2.0 * (var + eps_m * eps_m) * math.log(2.0 / delta) / (n - m))
        return BoundReport(method, eps, bernoulli_kl(theta), s)
    if method == "mult_g":
        s = scale_for(config, moments)
        beta = math.sqrt(n * m2) / s
        eps = math.sqrt(2.0 * m2 * log_inv / n) + math.sqrt(m2 / n)
        return BoundReport(method, eps, 0.5 * beta, s)
    if method == "add_g":
        s = scale_for(config, moments)
        beta = math.sqrt(n) / s
        eps = math.sqrt(2.0 * m2 * log_inv / n) + 1.0 / math.sqrt(n)
        return BoundReport(method, eps, 0.5 * beta, s)
    if method == "mult_w":
        s = scale_for(config, moments)
        k = _weibull_shape(config)
        g1 = gamma_fn(1.0 + 1.0 / k)
        g2 = gamma_fn(1.0 + 2.0 / k)
        c_k = weibull_mult_kl(k)
        eps = math.sqrt(2.0 * g2 * m2 * (c_k + log_inv) / (g1 * g1 * n))
        return BoundReport(method, eps, c_k, s)
    if method == "add_w":
        s = scale_for(config, moments)
        k = _weibull_shape(config)
        sigma = _weibull_scale_add(config)
        g1 = gamma_fn(1.0 + 1.0 / k)
        noise_var = sigma * sigma * (gamma_fn(1.0 + 2.0 / k) - g1 * g1)
        eps = math.sqrt(2.0 * (m2 + noise_var) * log_inv / n)
        return BoundReport(method, eps, 0.0, s)
    if method == "mult_s":
        s = scale_for(config, moments)
        dof, alpha = _student_params(config)
        c = student_kl_bound(alpha, dof)
        eps = math.sqrt(2.0 * (alpha * alpha * (dof - 2.0) + dof) * m2 * (c + log_inv) / ((dof - 2.0) * n))
        return BoundReport(method, eps, c, s, kl_is_upper_bound=True)
    if method == "add_s":
        s = scale_for(config, moments)
        dof, alpha = _student_params(config)
        c = student_kl_bound(alpha, dof)
        eps = math.sqrt(2.0 * (m2 + dof / (dof - 2.0)) * (c + log_inv) / n)
        return BoundReport(method, eps, c, s, kl_is_upper_bound=True)
    raise ValueError(f"unknown method {method!r}")  # pragma: no cover
