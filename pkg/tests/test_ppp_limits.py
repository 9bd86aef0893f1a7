import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats

from wrgsim import ppp_limits as pl
from wrgsim.errors import ParameterError


@pytest.mark.parametrize("intensity,window,mass", [
    (pl.GumbelIntensity(), pl.Window(0.0, 1.0, 0.0), 1.0),
    (pl.FrechetIntensity(3.0), pl.Window(0.0, 1.0, 1.0), 1.0),
    (pl.GumbelIntensity(), pl.Window(1.0, math.e, 2.0), (math.e - 1) * math.exp(-2)),
])
def test_window_counts_are_poisson(intensity, window, mass):
    assert pl.window_measure(intensity, window) == pytest.approx(mass, rel=1e-14)
    rng = np.random.default_rng(4)
    sets = [pl.sample_ppp(intensity, window, rng) for _ in range(10**4)]
    counts = np.array([len(s) for s in sets])
    assert abs(counts.mean() - mass) < 3 * math.sqrt(mass / 1e4)
    times = np.concatenate([s.times for s in sets])
    u = (times - window.s) / (window.t - window.s)
    assert stats.kstest(u, "uniform").pvalue > 0.01
    assert np.all(np.concatenate([s.marks for s in sets]) >= window.x_min)


def test_infinite_window_rejected(rng):
    with pytest.raises(ParameterError):
        pl.sample_ppp(pl.FrechetIntensity(3.0), pl.Window(0.0, 1.0, 0.0), rng)
    with pytest.raises(ParameterError):
        pl.Window(1.0, 1.0, 0.0)


def test_gumbel_window_cdf():
    assert pl.gumbel_window_max_cdf(1.0, math.e, 0.0) == pytest.approx(math.exp(-1))
    assert pl.gumbel_window_location(1.0, math.e) == 0.0
    assert pl.gumbel_window_location(1.0, math.e, 0.1, 0.5) == pytest.approx(-0.225)
    with pytest.raises(ParameterError):
        pl.gumbel_window_max_cdf(2.0, 1.0, 0.0)


def test_gumbel_ppp_matches_inversion():
    rng = np.random.default_rng(21)
    a = pl.gumbel_window_max_ppp_sample(1.0, math.e, rng, 10**5)
    b = pl.gumbel_window_max_sample(1.0, math.e, rng, 10**5)
    assert stats.ks_2samp(a, b).statistic < 0.01
    d = stats.kstest(a, lambda x: pl.gumbel_window_max_cdf(1.0, math.e, x)).statistic
    assert d < 0.01


def test_gumbel_ppp_brute_force_truncated():
    # at x_min=-1 the truncated process has only ~e(t-s) points, so it can be materialized
    rng = np.random.default_rng(3)
    fast = pl.gumbel_window_max_ppp_sample(1.0, 2.0, rng, 20000, x_min=-1.0)
    slow = []
    win = pl.Window(1.0, 2.0, -1.0)
    for _ in range(20000):
        ps = pl.sample_ppp(pl.GumbelIntensity(), win, rng)
        slow.append(np.max(ps.marks - np.log(ps.times)) if len(ps) else -np.inf)
    fast, slow = np.asarray(fast), np.asarray(slow)
    assert abs(np.mean(np.isinf(fast)) - np.mean(np.isinf(slow))) < 0.01
    assert stats.ks_2samp(fast[np.isfinite(fast)], slow[np.isfinite(slow)]).statistic < 0.02


def test_ratio_invariance():
    rng = np.random.default_rng(8)
    a = pl.gumbel_window_max_ppp_sample(1.0, 2.0, rng, 10**5)
    b = pl.gumbel_window_max_ppp_sample(10.0, 20.0, rng, 10**5)
    assert stats.ks_2samp(a, b).statistic < 0.01


def test_frechet_max():
    med = pl.frechet_max_quantile(3.0, 1, 0.5)
    assert med == pytest.approx(math.sqrt(2 / math.log(2)), rel=1e-12)
    assert pl.frechet_max_cdf(3.0, 1, med) == pytest.approx(0.5)
    with pytest.raises(ParameterError):
        pl.frechet_max_cdf(3.0, 1, 0.0)


@settings(max_examples=50, deadline=None)
@given(st.floats(2.1, 6.0), st.integers(1, 3), st.floats(0.05, 20.0))
def test_kth_largest_monotone(alpha, m, x):
    first = pl.kth_largest_cdf(alpha, m, 1, x)
    assert first == pytest.approx(pl.frechet_max_cdf(alpha, m, x), rel=1e-12, abs=1e-300)
    vals = [pl.kth_largest_cdf(alpha, m, k, x) for k in range(1, 6)]
    assert all(b >= a - 1e-15 for a, b in zip(vals, vals[1:]))


def test_frechet_functional_matches_limit():
    # m max f log(1/t) over the alpha=3 process with marks >= 0.05 against exp(-Gamma(3) x^-2)
    rng = np.random.default_rng(12)
    win = pl.Window(0.0, 1.0, 0.05)
    draws = [pl.frechet_ppp_functional(pl.sample_ppp(pl.FrechetIntensity(3.0), win, rng))
             for _ in range(4000)]
    d = stats.kstest(draws, lambda x: pl.frechet_max_cdf(3.0, 1, np.maximum(x, 1e-9))).statistic
    assert d < 0.03


def test_z_functional_examples():
    assert pl.z_functional([(0.25, 2.0), (0.5, 1.0)], 1) == pytest.approx(0.58333333333333, abs=1e-12)
    assert pl.z_functional([(0.3, 5.0)], 1) == pytest.approx(0.7, abs=1e-15)
    assert pl.z_functional([(0.3, 5.0)], 3) == pytest.approx(2.1, abs=1e-14)
    with pytest.raises(ParameterError):
        pl.z_functional(np.empty((0, 2)))


def test_z_functional_drift_limit():
    pts = np.array([(0.25, 2.0), (0.5, 1.0), (0.8, 0.3)])
    base = pl.z_functional(pts)
    assert pl.z_functional(pts, drift=1e-12) == pytest.approx(base, rel=1e-9)
    assert pl.z_functional(pts, drift=0.5) < base


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.floats(0.01, 0.99), st.floats(0.01, 10.0)), min_size=1, max_size=12),
       st.floats(1.0, 5.0), st.data())
def test_z_functional_monotone_in_argmax_mark(points, factor, data):
    pts = np.array(points)
    u = np.sort(pts[:, 0])
    g, seg = pts[np.argsort(pts[:, 0]), 1], np.diff(np.append(u, 1.0))
    cand = g * np.cumsum((seg / np.cumsum(g))[::-1])[::-1]
    j = int(np.argsort(pts[:, 0])[np.argmax(cand)])
    bumped = pts.copy()
    bumped[j, 1] *= factor
    assert pl.z_functional(bumped) >= pl.z_functional(pts) - 1e-12


def test_z_sampler_truncation_sensitivity():
    rng = np.random.default_rng(31)
    a = np.median(pl.z_sampler(1.5, 1, 1e-2, rng, 4000))
    b = np.median(pl.z_sampler(1.5, 1, 1e-3, rng, 4000))
    assert abs(a - b) / b < 0.05
    assert pl.small_mark_drift(1.5, 1e-2) == pytest.approx(0.1)
    with pytest.raises(ParameterError):
        pl.z_sampler(2.5, 1, 1e-3, rng)


def test_location_laws():
    rng = np.random.default_rng(2)
    s = pl.location_I_alpha_sample(3.0, rng, 10**5)
    assert s.mean() == pytest.approx(0.125, abs=0.003)
    for x in (0.05, 0.3, 0.7):
        assert pl.location_I_alpha_cdf(3.0, x) == pytest.approx(pl.location_I_alpha_cdf_quadrature(3.0, x), abs=1e-9)
    assert stats.kstest(s, lambda x: pl.location_I_alpha_cdf(3.0, np.clip(x, 1e-300, 1 - 1e-16))).pvalue > 0.01
    w = pl.location_window_sample(1.0, math.e, rng, 10**4)
    assert stats.kstest(w, lambda x: pl.location_window_cdf(1.0, math.e, x)).pvalue > 0.01
    with pytest.raises(ParameterError):
        pl.location_I_alpha_cdf(3.0, 1.0)
