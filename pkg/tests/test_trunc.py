"""Soft truncation: branch agreement, envelope, and symmetry properties."""

import math

import numpy as np
import pytest

from smoothmean.trunc import SATURATION, SQRT2, trunc, trunc_indicator_form

GRID = np.linspace(-20.0, 20.0, 10_000)


def test_odd_at_zero():
    assert trunc(0.0) == 0.0


def test_boundary_meets_saturation():
    # Both branches agree at u = sqrt(2) up to one ulp.
    assert trunc(SQRT2) == pytest.approx(SATURATION, abs=1e-15)
    assert trunc(-SQRT2) == pytest.approx(-SATURATION, abs=1e-15)
    assert trunc(1.5) == SATURATION
    assert trunc(-3.0) == -SATURATION


def test_cubic_value():
    assert trunc(1.0) == pytest.approx(5.0 / 6.0, abs=1e-16)


def test_envelope():
    # -log(1 - u + u^2/2) <= trunc(u) <= log(1 + u + u^2/2) everywhere.
    for u in GRID:
        lo = -math.log(1.0 - u + u * u / 2.0)
        hi = math.log(1.0 + u + u * u / 2.0)
        t = trunc(u)
        assert lo - 1e-12 <= t <= hi + 1e-12


def test_oddness_exact():
    for u in GRID:
        assert trunc(-u) == -trunc(u)


def test_monotone():
    vals = [trunc(u) for u in GRID]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_indicator_form_identical():
    for u in GRID:
        assert trunc_indicator_form(float(u)) == trunc(float(u))
    for u in (SQRT2, -SQRT2, math.nextafter(SQRT2, 2.0), math.nextafter(-SQRT2, -2.0)):
        assert trunc_indicator_form(u) == trunc(u)


def test_bounded():
    assert all(abs(trunc(u)) <= SATURATION + 1e-15 for u in GRID)
