"""Estimator behavior: scale formulas, closed-form reductions, invariance."""

import math

import numpy as np
import pytest

from smoothmean.estimators import (
    ALL_METHODS,
    SMOOTHED_METHODS,
    DegenerateScaleError,
    EstimatorConfig,
    MomentInfo,
    bernoulli_kl,
    default_bernoulli_theta,
    estimate,
    scale_for,
    weibull_mult_kl,
)
from smoothmean.trunc import SATURATION, SQRT2

LOG100 = math.log(100.0)


def psi(u):
    if u > SQRT2:
        return SATURATION
    if u < -SQRT2:
        return -SATURATION
    return u - u**3 / 6.0


class TestConfigValidation:
    def test_unknown_method(self):
        with pytest.raises(ValueError):
            EstimatorConfig("mult_x")

    def test_inapplicable_parameter(self):
        with pytest.raises(ValueError):
            EstimatorConfig("mean", bernoulli_theta=0.5)
        with pytest.raises(ValueError):
            EstimatorConfig("mult_g", weibull_shape=2.0)
        with pytest.raises(ValueError):
            EstimatorConfig("mult_w", weibull_scale=1.0)  # scale is determined by unit mean

    def test_parameter_ranges(self):
        with pytest.raises(ValueError):
            EstimatorConfig("mult_b", bernoulli_theta=1.0)
        with pytest.raises(ValueError):
            EstimatorConfig("mult_s", student_dof=4.9)
        with pytest.raises(ValueError):
            EstimatorConfig("add_w", weibull_scale=0.0)

    def test_moment_info_ranges(self):
        with pytest.raises(ValueError):
            MomentInfo(1.0, 1.0, 0, 0.01)
        with pytest.raises(ValueError):
            MomentInfo(1.0, 1.0, 10, 0.5)
        with pytest.raises(ValueError):
            MomentInfo(-1.0, 1.0, 10, 0.01)


class TestBernoulliDefaults:
    def test_kl_formula(self):
        theta = 0.3
        want = theta * math.log(2.0 * theta) + (1.0 - theta) * math.log(2.0 * (1.0 - theta))
        assert bernoulli_kl(theta) == pytest.approx(want, abs=1e-15)
        assert bernoulli_kl(0.5) == 0.0

    def test_default_theta_grid_rule(self):
        # Exhaustive recomputation of the grid argmin.
        delta = 0.01
        grid = [i / 100.0 for i in range(1, 100)]
        want = min(grid, key=lambda t: (bernoulli_kl(t) + math.log(1.0 / delta)) / t)
        assert default_bernoulli_theta(delta) == want
        assert want == pytest.approx(0.99)


class TestScales:
    def test_additive_normal_example(self):
        mi = MomentInfo(second_moment=1.0, variance=1.0, n=100, delta=0.01)
        assert scale_for(EstimatorConfig("add_g"), mi) == pytest.approx(math.sqrt(100.0 / (2.0 * LOG100)), rel=1e-15)

    def test_mest_example(self):
        mi = MomentInfo(second_moment=2.0, variance=1.0, n=100, delta=math.exp(-1.0))
        assert scale_for(EstimatorConfig("mest"), mi) == pytest.approx(math.sqrt(200.0), rel=1e-15)

    def test_weibull_multiplicative_formula(self):
        mi = MomentInfo(second_moment=1.7, variance=0.9, n=50, delta=0.01)
        k = 2.0
        g1 = math.gamma(1.5)
        g2 = math.gamma(2.0)
        want = math.sqrt(50 * g2 * 1.7 / (2 * g1 * g1 * (weibull_mult_kl(k) + LOG100)))
        assert scale_for(EstimatorConfig("mult_w"), mi) == pytest.approx(want, rel=1e-12)

    def test_additive_weibull_small_noise_limit(self):
        # As sigma -> 0 the additive Weibull scale recovers the Normal-case scale.
        mi = MomentInfo(second_moment=1.0, variance=1.0, n=100, delta=0.01)
        tiny = scale_for(EstimatorConfig("add_w", weibull_scale=1e-9), mi)
        assert tiny == pytest.approx(scale_for(EstimatorConfig("add_g"), mi), rel=1e-12)

    def test_no_scale_methods(self):
        mi = MomentInfo(1.0, 1.0, 10, 0.01)
        for method in ("mean", "med", "mom"):
            with pytest.raises(ValueError):
                scale_for(EstimatorConfig(method), mi)

    def test_degenerate_scale(self):
        with pytest.raises(DegenerateScaleError):
            scale_for(EstimatorConfig("mult_b"), MomentInfo(0.0, 0.0, 10, 0.01))
        with pytest.raises(DegenerateScaleError):
            scale_for(EstimatorConfig("mest"), MomentInfo(1.0, 0.0, 10, 0.01))


class TestClassicalEstimators:
    def test_median_even(self):
        mi = MomentInfo(1.0, 1.0, 4, 0.01)
        assert estimate(EstimatorConfig("med"), [1.0, 2.0, 3.0, 4.0], mi) == 2.5

    def test_median_odd(self):
        mi = MomentInfo(1.0, 1.0, 5, 0.01)
        assert estimate(EstimatorConfig("med"), [5.0, 1.0, 3.0, 2.0, 4.0], mi) == 3.0

    def test_mom_single_block_is_mean(self):
        xs = [0.5, 1.5, -1.0, 3.0, 0.2, 0.8]
        mi = MomentInfo(1.0, 1.0, 6, delta=0.45)  # log(1/0.45) < 1 -> k = 1
        assert estimate(EstimatorConfig("mom"), xs, mi) == pytest.approx(np.mean(xs), abs=1e-15)

    def test_mom_fallback_small_sample(self):
        xs = [4.0, -2.0, 1.0]
        mi = MomentInfo(1.0, 1.0, 3, delta=0.01)  # delta <= exp(1 - n/2)
        assert estimate(EstimatorConfig("mom"), xs, mi) == pytest.approx(1.0, abs=1e-15)

    def test_mom_blocking_hand_computed(self):
        # n = 7, delta = 0.3: k = 2 blocks of 3, one leftover joins block 0.
        xs = np.array([1.0, 2.0, 3.0, 10.0, 11.0, 12.0, 4.0])
        mi = MomentInfo(1.0, 1.0, 7, delta=0.3)
        block0 = np.mean([1.0, 2.0, 3.0, 4.0])
        block1 = np.mean([10.0, 11.0, 12.0])
        want = np.median([block0, block1])
        assert estimate(EstimatorConfig("mom"), xs, mi) == pytest.approx(want, abs=1e-15)

    def test_mom_deterministic(self):
        rng = np.random.default_rng(5)
        xs = rng.normal(size=40)
        mi = MomentInfo(1.0, 1.0, 40, 0.01)
        a = estimate(EstimatorConfig("mom"), xs, mi)
        b = estimate(EstimatorConfig("mom"), xs, mi)
        assert a == b

    def test_mest_symmetric_two_points(self):
        mi = MomentInfo(second_moment=9.0, variance=9.0, n=2, delta=0.01)
        got = estimate(EstimatorConfig("mest"), [-3.0, 3.0], mi)
        assert got == pytest.approx(0.0, abs=1e-9)

    def test_mest_root_residual(self):
        rng = np.random.default_rng(77)
        for n in (10, 100):
            xs = rng.lognormal(0.0, 1.1, n) + 0.3
            var = float(np.var(xs)) + 0.5
            mi = MomentInfo(var + 1.0, var, n, 0.01)
            s = scale_for(EstimatorConfig("mest"), mi)
            theta_hat = estimate(EstimatorConfig("mest"), xs, mi)
            residual = sum(2.0 * math.atan(math.exp((x - theta_hat) / s)) - math.pi / 2.0 for x in xs)
            assert abs(residual) <= 1e-10 * n


class TestSmoothedEstimators:
    def test_all_zero_data(self):
        mi = MomentInfo(0.0, 0.0, 5, 0.01)
        xs = [0.0] * 5
        for method in SMOOTHED_METHODS:
            assert estimate(EstimatorConfig(method), xs, mi) == 0.0

    def test_bernoulli_reduction_exact(self):
        rng = np.random.default_rng(9)
        xs = rng.normal(1.0, 2.0, 30)
        mi = MomentInfo(5.0, 4.0, 30, 0.01)
        s = scale_for(EstimatorConfig("mult_b"), mi)
        want = s / 30 * sum(psi(x / s) for x in xs)
        assert estimate(EstimatorConfig("mult_b"), xs, mi) == pytest.approx(want, abs=1e-15)

    def test_bernoulli_theta_free(self):
        rng = np.random.default_rng(10)
        xs = rng.normal(0.5, 1.0, 20)
        mi = MomentInfo(1.25, 1.0, 20, 0.01)
        a = estimate(EstimatorConfig("mult_b", bernoulli_theta=0.3), xs, mi)
        b = estimate(EstimatorConfig("mult_b", bernoulli_theta=0.9), xs, mi)
        assert a == b

    def test_bernoulli_two_point_expectation(self):
        # theta*psi(x/s) + (1-theta)*psi(0) collapses to theta*psi(x/s).
        for theta in (0.2, 0.99):
            for x in (-1.7, 0.4, 2.0):
                assert theta * psi(x) + (1.0 - theta) * psi(0.0) == theta * psi(x)

    @pytest.mark.parametrize("method", ["mult_b", "mult_g", "mult_w", "mult_s", "add_g", "add_s"])
    def test_sign_equivariance(self, method):
        rng = np.random.default_rng(11)
        xs = rng.standard_t(6.0, 25) * 2.0 + 1.0
        mi = MomentInfo(float(np.mean(xs**2)) + 1.0, 4.0, 25, 0.01)
        plus = estimate(EstimatorConfig(method), xs, mi)
        minus = estimate(EstimatorConfig(method), -xs, mi)
        assert plus == pytest.approx(-minus, abs=1e-10)

    @pytest.mark.parametrize("method", SMOOTHED_METHODS)
    def test_boundedness(self, method):
        rng = np.random.default_rng(12)
        xs = rng.lognormal(0.0, 1.75, 20) - 2.0
        mi = MomentInfo(float(np.mean(xs**2)), float(np.var(xs)), 20, 0.01)
        got = estimate(EstimatorConfig(method), xs, mi)
        s = scale_for(EstimatorConfig(method), mi)
        assert abs(got) <= s * SATURATION * (1.0 + 1e-12) + 1e-12

    @pytest.mark.parametrize("method", ["add_g", "add_w", "add_s"])
    def test_high_variance_collapse_on_fixed_data(self, method):
        # Inflating the second moment by 1e6 scales every s by 1e3; the
        # additive estimates then agree with the Bernoulli one to o(s).
        rng = np.random.default_rng(13)
        xs = rng.normal(3.0, 2.0, 20)
        base_m2 = float(np.mean(xs**2))
        mi = MomentInfo(base_m2 * 1e6, 4.0, 20, 0.01)
        s = scale_for(EstimatorConfig("mult_b"), mi)
        add = estimate(EstimatorConfig(method), xs, mi)
        bern = estimate(EstimatorConfig("mult_b"), xs, mi)
        assert abs(add - bern) <= 1e-4 * s

    def test_additive_normal_coverage_oracle(self):
        # 1e4 seeded trials of Normal(1, 0.25) with n=20: deviations stay
        # within the additive-Normal half-width in at least 98% of trials.
        mi = MomentInfo(second_moment=1.25, variance=0.25, n=20, delta=0.01)
        eps = math.sqrt(2.0 * 1.25 * LOG100 / 20.0) + 1.0 / math.sqrt(20.0)
        config = EstimatorConfig("add_g")
        hits = 0
        for t in range(10_000):
            rng = np.random.default_rng((101, t))
            xs = rng.normal(1.0, 0.5, 20)
            if abs(estimate(config, xs, mi) - 1.0) <= eps:
                hits += 1
        assert hits >= 9_800

    def test_mult_bc_two_stage_hand_check(self):
        # Recompute the centering pipeline arithmetic independently.
        rng = np.random.default_rng(14)
        n, m = 12, 3
        xs = rng.normal(2.0, 1.0, n)
        m2, var, delta = 5.0, 1.0, 0.01
        mi = MomentInfo(m2, var, n, delta)
        theta = default_bernoulli_theta(delta)
        log_inv = math.log(1.0 / delta)
        s1 = math.sqrt(m * m2 / (2.0 * log_inv))
        anchor = s1 / m * sum(psi(x / s1) for x in xs[:m])
        eps_m = m2 / (2.0 * s1) + s1 / (m * theta) * (bernoulli_kl(theta) + log_inv)
        s2 = math.sqrt((n - m) * (var + eps_m**2) / (2.0 * log_inv))
        want = anchor + s2 / (n - m) * sum(psi((x - anchor) / s2) for x in xs[m:])
        got = estimate(EstimatorConfig("mult_bc", split_m=m), xs, mi)
        assert got == pytest.approx(want, abs=1e-13)

    def test_mult_bc_split_validation(self):
        mi = MomentInfo(1.0, 1.0, 5, 0.01)
        with pytest.raises(ValueError):
            estimate(EstimatorConfig("mult_bc", split_m=5), np.ones(5), mi)


class TestInputContracts:
    def test_empty_sample(self):
        with pytest.raises(ValueError):
            estimate(EstimatorConfig("mean"), [], MomentInfo(1.0, 1.0, 1, 0.01))

    def test_sample_size_mismatch(self):
        with pytest.raises(ValueError):
            estimate(EstimatorConfig("mean"), [1.0, 2.0], MomentInfo(1.0, 1.0, 3, 0.01))

    def test_every_method_runs(self):
        rng = np.random.default_rng(15)
        xs = rng.normal(1.0, 0.5, 20)
        mi = MomentInfo(1.25, 0.25, 20, 0.01)
        for method in ALL_METHODS:
            value = estimate(EstimatorConfig(method), xs, mi)
            assert math.isfinite(value)
