"""The twelve location estimators under comparison.

Classical baselines (empirical mean/median), two known sub-Gaussian
estimators (median-of-means, Gudermannian M-estimator), and the eight
noise-smoothed soft-truncation variants. Scales are set from the true
distribution moments; each smoothed method evaluates its closed-form
kernel at per-datum shift/scale arguments.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._jit import jit
from .kernels import _fw_normal, _fw_student, _fw_weibull
from .specfn import _gamma, _gudermannian, gamma_fn
from .trunc import _trunc

__all__ = [
    "ALL_METHODS",
    "SMOOTHED_METHODS",
    "MomentInfo",
    "EstimatorConfig",
    "DegenerateScaleError",
    "bernoulli_kl",
    "default_bernoulli_theta",
    "bernoulli_halfwidth",
    "weibull_mult_kl",
    "student_kl_bound",
    "scale_for",
    "estimate",
]

# Table-order method identifiers.
ALL_METHODS = (
    "mean",
    "med",
    "mom",
    "mest",
    "mult_b",
    "mult_bc",
    "mult_g",
    "mult_w",
    "mult_s",
    "add_g",
    "add_w",
    "add_s",
)

SMOOTHED_METHODS = ("mult_b", "mult_bc", "mult_g", "mult_w", "mult_s", "add_g", "add_w", "add_s")

# Extra parameters each method accepts; anything else set on the config is
# rejected so that configs stay unambiguous.
_ALLOWED_PARAMS = {
    "mean": (),
    "med": (),
    "mom": (),
    "mest": (),
    "mult_b": ("bernoulli_theta",),
    "mult_bc": ("bernoulli_theta", "split_m"),
    "mult_g": (),
    "mult_w": ("weibull_shape",),
    "mult_s": ("student_dof", "student_shift"),
    "add_g": (),
    "add_w": ("weibull_shape", "weibull_scale"),
    "add_s": ("student_dof", "student_shift"),
}

_PARAM_FIELDS = ("bernoulli_theta", "split_m", "weibull_shape", "weibull_scale", "student_dof", "student_shift")


class DegenerateScaleError(ValueError):
    """Raised when a method's scale formula evaluates to zero."""


@dataclass(frozen=True)
class MomentInfo:
    """True distribution quantities driving the scale formulas."""

    second_moment: float
    variance: float
    n: int
    delta: float

    def __post_init__(self):
        if self.second_moment < 0.0 or self.variance < 0.0:
            raise ValueError("moments must be nonnegative")
        if self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n}")
        if not 0.0 < self.delta < 0.5:
            raise ValueError(f"delta must lie in (0, 1/2), got {self.delta}")

    @property
    def log_inv_delta(self) -> float:
        return math.log(1.0 / self.delta)


@dataclass(frozen=True)
class EstimatorConfig:
    """Method id plus the parameters that method actually uses.

    Unset parameters resolve to the defaults: bernoulli_theta minimizes
    (KL + log(1/delta))/theta on a 0.01 grid, split_m = ceil(n/4),
    weibull_shape = 2.0, weibull_scale = 1.0 (additive case only),
    student_dof = 5.1, student_shift = 1.0.
    """

    method: str
    bernoulli_theta: float | None = None
    split_m: int | None = None
    weibull_shape: float | None = None
    weibull_scale: float | None = None
    student_dof: float | None = None
    student_shift: float | None = None

    def __post_init__(self):
        if self.method not in ALL_METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {ALL_METHODS}")
        allowed = _ALLOWED_PARAMS[self.method]
        for field in _PARAM_FIELDS:
            if getattr(self, field) is not None and field not in allowed:
                raise ValueError(f"parameter {field!r} does not apply to method {self.method!r}")
        if self.bernoulli_theta is not None and not 0.0 < self.bernoulli_theta < 1.0:
            raise ValueError(f"bernoulli_theta must lie in (0, 1), got {self.bernoulli_theta}")
        if self.split_m is not None and self.split_m < 1:
            raise ValueError(f"split_m must be a positive integer, got {self.split_m}")
        if self.weibull_shape is not None and self.weibull_shape <= 0.0:
            raise ValueError(f"weibull_shape must be positive, got {self.weibull_shape}")
        if self.weibull_scale is not None and self.weibull_scale <= 0.0:
            raise ValueError(f"weibull_scale must be positive, got {self.weibull_scale}")
        if self.student_dof is not None and self.student_dof <= 5.0:
            raise ValueError(f"student_dof must exceed 5, got {self.student_dof}")


# ---------------------------------------------------------------------------
# Relative-entropy constants shared with the bound calculators
# ---------------------------------------------------------------------------


def bernoulli_kl(theta: float, prior_theta: float = 0.5) -> float:
    """KL divergence between Bernoulli(theta) and Bernoulli(prior_theta)."""
    if not 0.0 < theta < 1.0 or not 0.0 < prior_theta < 1.0:
        raise ValueError("Bernoulli parameters must lie in (0, 1)")
    return theta * math.log(theta / prior_theta) + (1.0 - theta) * math.log((1.0 - theta) / (1.0 - prior_theta))


def default_bernoulli_theta(delta: float) -> float:
    """Deletion probability minimizing (KL(theta) + log(1/delta)) / theta.

    Grid search over {0.01, ..., 0.99}; the estimate itself is theta-free,
    theta only tightens the reported Bernoulli deviation bound.
    """
    log_inv = math.log(1.0 / delta)
    best_theta, best_val = 0.5, math.inf
    for i in range(1, 100):
        theta = i / 100.0
        val = (bernoulli_kl(theta) + log_inv) / theta
        if val < best_val:
            best_theta, best_val = theta, val
    return best_theta


def bernoulli_halfwidth(s: float, n_points: int, theta: float, second_moment: float, delta: float) -> float:
    """Two-sided deviation half-width of the Bernoulli-smoothed truncated mean."""
    log_inv = math.log(1.0 / delta)
    return second_moment / (2.0 * s) + s / (n_points * theta) * (bernoulli_kl(theta) + log_inv)


def weibull_mult_kl(shape: float) -> float:
    """KL constant of the unit-mean Weibull noise against the unit-scale prior."""
    g1 = gamma_fn(1.0 + 1.0 / shape)
    # Exactly zero at shape 1; clamp the float rounding residue so the
    # nonnegativity of a relative entropy survives evaluation.
    return max(0.0, g1 ** (-shape) + shape * math.log(g1) - 1.0)


def student_kl_bound(shift: float, dof: float) -> float:
    """Closed-form upper bound on the KL between shifted and centered Student-t."""
    if dof <= 1.0:
        raise ValueError(f"student_kl_bound requires dof > 1, got {dof}")
    folded = 4.0 * abs(shift) * _gamma(0.5 * (dof + 1.0)) / (math.sqrt(dof * math.pi) * _gamma(0.5 * dof) * (dof - 1.0))
    return 0.5 * (dof + 1.0) * (math.log1p(shift * shift / dof) + folded)


# ---------------------------------------------------------------------------
# Parameter resolution
# ---------------------------------------------------------------------------


def _theta(config: EstimatorConfig, delta: float) -> float:
    return config.bernoulli_theta if config.bernoulli_theta is not None else default_bernoulli_theta(delta)


def _split_m(config: EstimatorConfig, n: int) -> int:
    # A quarter of the sample suffices for the coarse anchor; an equal split
    # costs too many second-stage points and loses to the uncentered
    # estimator at |ratio| = 2.
    m = config.split_m if config.split_m is not None else -(-n // 4)
    if not 1 <= m < n:
        raise ValueError(f"mult_bc requires 1 <= split_m < n, got m={m}, n={n}")
    return m


def _weibull_shape(config: EstimatorConfig) -> float:
    return config.weibull_shape if config.weibull_shape is not None else 2.0


def _weibull_scale_add(config: EstimatorConfig) -> float:
    return config.weibull_scale if config.weibull_scale is not None else 1.0


def _student_params(config: EstimatorConfig) -> tuple[float, float]:
    dof = config.student_dof if config.student_dof is not None else 5.1
    shift = config.student_shift if config.student_shift is not None else 1.0
    return dof, shift


# ---------------------------------------------------------------------------
# Scale formulas
# ---------------------------------------------------------------------------


def scale_for(config: EstimatorConfig, moments: MomentInfo) -> float:
    """Per-method scale s > 0 derived from true moments, n, and delta."""
    method = config.method
    n = moments.n
    m2 = moments.second_moment
    log_inv = moments.log_inv_delta

    if method in ("mean", "med", "mom"):
        raise ValueError(f"method {method!r} has no scale parameter")
    if method == "mest":
        s_sq = 2.0 * n * moments.variance / log_inv
    elif method in ("mult_b", "mult_bc", "mult_g", "add_g"):
        s_sq = n * m2 / (2.0 * log_inv)
    elif method == "mult_w":
        k = _weibull_shape(config)
        g1 = gamma_fn(1.0 + 1.0 / k)
        g2 = gamma_fn(1.0 + 2.0 / k)
        s_sq = n * g2 * m2 / (2.0 * g1 * g1 * (weibull_mult_kl(k) + log_inv))
    elif method == "add_w":
        k = _weibull_shape(config)
        sigma = _weibull_scale_add(config)
        g1 = gamma_fn(1.0 + 1.0 / k)
        noise_var = sigma * sigma * (gamma_fn(1.0 + 2.0 / k) - g1 * g1)
        s_sq = n * (m2 + noise_var) / (2.0 * log_inv)
    elif method == "mult_s":
        dof, alpha = _student_params(config)
        c = student_kl_bound(alpha, dof)
        s_sq = n * (alpha * alpha * (dof - 2.0) + dof) * m2 / (2.0 * (dof - 2.0) * (c + log_inv))
    elif method == "add_s":
        dof, alpha = _student_params(config)
        c = student_kl_bound(alpha, dof)
        s_sq = n * (m2 + dof / (dof - 2.0)) / (2.0 * (c + log_inv))
    else:  # pragma: no cover - exhaustive over ALL_METHODS
        raise ValueError(f"unknown method {method!r}")

    if s_sq <= 0.0:
        raise DegenerateScaleError(f"scale for {method!r} degenerates to zero (second_moment or variance is 0)")
    return math.sqrt(s_sq)


# ---------------------------------------------------------------------------
# Compiled inner sums
# ---------------------------------------------------------------------------


@jit
def _sum_trunc(xs, shift, s):
    acc = 0.0
    for i in range(xs.shape[0]):
        acc += _trunc((xs[i] - shift) / s)
    return acc


@jit
def _sum_fw_normal_mult(xs, s, sqrt_beta):
    acc = 0.0
    for i in range(xs.shape[0]):
        x = xs[i]
        acc += _fw_normal(x / s, abs(x) / (s * sqrt_beta))
    return acc


@jit
def _sum_fw_normal_add(xs, s, b):
    acc = 0.0
    for i in range(xs.shape[0]):
        acc += _fw_normal(xs[i] / s, b)
    return acc


@jit
def _sum_fw_weibull_mult(xs, s, k, sigma):
    acc = 0.0
    for i in range(xs.shape[0]):
        acc += _fw_weibull(0.0, xs[i] / s, k, sigma)
    return acc


@jit
def _sum_fw_weibull_add(xs, s, k, sigma, center):
    acc = 0.0
    b = 1.0 / s
    for i in range(xs.shape[0]):
        acc += _fw_weibull((xs[i] - center) / s, b, k, sigma)
    return acc


@jit
def _sum_fw_student_mult(xs, s, dof, alpha):
    acc = 0.0
    for i in range(xs.shape[0]):
        x = xs[i]
        acc += _fw_student(alpha * x / s, abs(x) / s, dof)
    return acc


@jit
def _sum_fw_student_add(xs, s, dof):
    acc = 0.0
    b = 1.0 / s
    for i in range(xs.shape[0]):
        acc += _fw_student(xs[i] / s, b, dof)
    return acc


@jit
def _mest_root(xs, s):
    # Sum of Gudermannian influences is strictly decreasing in theta, so the
    # root is unique and bracketed by [min - s, max + s].
    lo = xs[0]
    hi = xs[0]
    for i in range(xs.shape[0]):
        if xs[i] < lo:
            lo = xs[i]
        if xs[i] > hi:
            hi = xs[i]
    lo -= s
    hi += s
    tol = 1e-12 * (1.0 + abs(hi - lo))
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        acc = 0.0
        for i in range(xs.shape[0]):
            acc += _gudermannian((xs[i] - mid) / s)
        if acc > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# Point estimates
# ---------------------------------------------------------------------------


def _median_of_means(xs: np.ndarray, delta: float) -> float:
    n = xs.shape[0]
    # The sub-Gaussian guarantee needs delta > exp(1 - n/2); outside that
    # regime the sample mean is returned.
    if delta <= math.exp(1.0 - n / 2.0):
        return float(np.mean(xs))
    k = math.ceil(math.log(1.0 / delta))
    if k <= 1:
        return float(np.mean(xs))
    q = n // k
    leftover = n - k * q
    block_means = np.empty(k)
    for j in range(k):
        block = xs[j * q : (j + 1) * q]
        if j < leftover:
            block = np.append(block, xs[k * q + j])
        block_means[j] = np.mean(block)
    return float(np.median(block_means))


def estimate(config: EstimatorConfig, xs, moments: MomentInfo) -> float:
    """Point estimate of the mean from the sample xs."""
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    if xs.size == 0:
        raise ValueError("cannot estimate from an empty sample")
    if xs.size != moments.n:
        raise ValueError(f"sample size {xs.size} does not match moments.n = {moments.n}")
    method = config.method
    n = moments.n
    m2 = moments.second_moment
    delta = moments.delta
    log_inv = moments.log_inv_delta

    if method == "mean":
        return float(np.mean(xs))
    if method == "med":
        return float(np.median(xs))
    if method == "mom":
        return _median_of_means(xs, delta)
    if method == "mest":
        s = scale_for(config, moments)
        return float(_mest_root(xs, s))

    # All remaining methods scale by the second moment; a fully degenerate
    # distribution forces the estimate without any scale machinery.
    if m2 == 0.0:
        return 0.0

    if method == "mult_b":
        s = scale_for(config, moments)
        return s / n * float(_sum_trunc(xs, 0.0, s))
    if method == "mult_bc":
        m = _split_m(config, n)
        theta = _theta(config, delta)
        s1 = math.sqrt(m * m2 / (2.0 * log_inv))
        anchor = s1 / m * float(_sum_trunc(xs[:m], 0.0, s1))
        eps_m = bernoulli_halfwidth(s1, m, theta, m2, delta)
        shifted_m2 = moments.variance + eps_m * eps_m
        s2 = math.sqrt((n - m) * shifted_m2 / (2.0 * log_inv))
        second_stage = s2 / (n - m) * float(_sum_trunc(xs[m:], anchor, s2))
        return second_stage + anchor
    if method == "mult_g":
        s = scale_for(config, moments)
        sqrt_beta = (n * m2) ** 0.25 / math.sqrt(s)
        return s / n * float(_sum_fw_normal_mult(xs, s, sqrt_beta))
    if method == "add_g":
        s = scale_for(config, moments)
        sqrt_beta = n ** 0.25 / math.sqrt(s)
        return s / n * float(_sum_fw_normal_add(xs, s, 1.0 / (s * sqrt_beta)))
    if method == "mult_w":
        k = _weibull_shape(config)
        sigma = 1.0 / gamma_fn(1.0 + 1.0 / k)  # unit-mean noise
        s = scale_for(config, moments)
        return s / n * float(_sum_fw_weibull_mult(xs, s, k, sigma))
    if method == "add_w":
        k = _weibull_shape(config)
        sigma = _weibull_scale_add(config)
        center = sigma * gamma_fn(1.0 + 1.0 / k)
        s = scale_for(config, moments)
        return s / n * float(_sum_fw_weibull_add(xs, s, k, sigma, center))
    if method == "mult_s":
        dof, alpha = _student_params(config)
        s = scale_for(config, moments)
        return s / n * float(_sum_fw_student_mult(xs, s, dof, alpha))
    if method == "add_s":
        dof, _ = _student_params(config)
        s = scale_for(config, moments)
        return s / n * float(_sum_fw_student_add(xs, s, dof))
    raise ValueError(f"unknown method {method!r}")  # pragma: no cover
