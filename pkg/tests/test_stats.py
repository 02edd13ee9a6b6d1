"""Oracle tests for power-law slope fits and threshold crossing estimates."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ionqec.stats import (SlopeFit, ThresholdEstimate, estimate_threshold,
                          fit_effective_distance)


def test_exact_power_law_slope_recovered():
    ps = np.logspace(-3, -1, 7)
    pts = [(p, 0.2 * p ** 3.0) for p in ps]
    fit = fit_effective_distance(pts)
    assert fit.slope == pytest.approx(3.0, abs=1e-12)
    assert fit.intercept == pytest.approx(math.log(0.2), abs=1e-10)
    assert fit.stderr == pytest.approx(0.0, abs=1e-10)
    assert fit.n_points == 7


@given(slope=st.floats(0.5, 8.0), amp=st.floats(1e-4, 10.0),
       n=st.integers(3, 12))
@settings(deadline=None, max_examples=50)
def test_slope_fit_matches_polyfit(slope, amp, n):
    ps = np.logspace(-3, -1, n)
    pls = amp * ps ** slope
    fit = fit_effective_distance(list(zip(ps, pls)))
    ref = np.polyfit(np.log(ps), np.log(pls), 1)
    assert fit.slope == pytest.approx(float(ref[0]), rel=1e-8, abs=1e-8)
    assert fit.intercept == pytest.approx(float(ref[1]), rel=1e-8, abs=1e-6)


def test_slope_stderr_matches_textbook_formula():
    rng = np.random.default_rng(5)
    ps = np.logspace(-3, -1, 9)
    pls = 0.5 * ps ** 2.5 * np.exp(rng.normal(0.0, 0.1, ps.size))
    fit = fit_effective_distance(list(zip(ps, pls)))
    x, y = np.log(ps), np.log(pls)
    resid = y - (fit.intercept + fit.slope * x)
    sxx = np.sum((x - x.mean()) ** 2)
    expected = math.sqrt(np.sum(resid ** 2) / (len(x) - 2) / sxx)
    assert fit.stderr == pytest.approx(expected, rel=1e-10)


def test_slope_fit_drops_zero_rate_points_and_validates():
    ps = np.logspace(-3, -1, 5)
    pts = [(p, 0.2 * p ** 3.0) for p in ps]
    fit = fit_effective_distance(pts + [(0.05, 0.0)])
    assert fit.n_points == 5
    assert fit.slope == pytest.approx(3.0, abs=1e-12)
    with pytest.raises(ValueError):
        fit_effective_distance([(1e-3, 1e-9), (1e-2, 0.0), (1e-1, 0.0)])
    with pytest.raises(ValueError):
        fit_effective_distance([(1e-2, 1e-9), (1e-2, 1e-6), (1e-2, 1e-3)])


def _synthetic_curves(p_th, slopes, grid):
    # Curves of the scaling-ansatz form p_L = 0.1 * (p / p_th) ** k all
    # pass exactly through (p_th, 0.1), so every pairwise crossing is p_th.
    return {d: [(p, 0.1 * (p / p_th) ** k) for p in grid]
            for d, k in slopes.items()}


def test_threshold_recovers_common_crossing():
    grid = np.logspace(math.log10(0.01), math.log10(0.04), 6)
    curves = _synthetic_curves(0.02, {3: 2.0, 5: 3.0, 7: 4.0}, grid)
    est = estimate_threshold(curves)
    assert est.crossed
    assert est.value == pytest.approx(0.02, rel=1e-9)
    assert est.spread == pytest.approx(0.0, abs=1e-10)
    assert len(est.pairwise) == 3
    for d1, d2, c in est.pairwise:
        assert d1 < d2
        assert c == pytest.approx(0.02, rel=1e-9)


def test_threshold_no_crossing_reports_none():
    grid = np.logspace(-3, -2, 5)
    # Parallel curves in log-log space never intersect.
    curves = {3: [(p, 10.0 * p ** 2) for p in grid],
              5: [(p, 1.0 * p ** 2) for p in grid]}
    est = estimate_threshold(curves)
    assert not est.crossed
    assert est.value is None
    assert est.pairwise == ((3, 5, None),)


def test_threshold_requires_two_curves():
    with pytest.raises(ValueError):
        estimate_threshold({3: [(0.01, 0.1), (0.02, 0.2)]})


def test_threshold_spread_is_max_abs_deviation():
    grid = list(np.logspace(math.log10(0.01), math.log10(0.04), 8))
    curves = _synthetic_curves(0.02, {3: 2.0, 5: 3.0}, grid)
    # Shift the d=7 curve so its crossings sit at a different p.
    curves[7] = [(p, 0.1 * (p / 0.024) ** 4.0) for p in grid]
    est = estimate_threshold(curves)
    assert est.crossed
    vals = [c for _, _, c in est.pairwise if c is not None]
    mean = sum(vals) / len(vals)
    assert est.value == pytest.approx(mean, rel=1e-12)
    assert est.spread == pytest.approx(max(abs(v - mean) for v in vals),
                                       rel=1e-12)


def test_zero_rate_points_excluded_from_crossing():
    grid = list(np.logspace(math.log10(0.01), math.log10(0.04), 6))
    curves = _synthetic_curves(0.02, {3: 2.0, 5: 3.0}, grid)
    # Zeroing the low-p tail must not prevent finding the crossing.
    curves[5][0] = (grid[0], 0.0)
    est = estimate_threshold(curves)
    assert est.crossed
    assert est.value == pytest.approx(0.02, rel=1e-9)
