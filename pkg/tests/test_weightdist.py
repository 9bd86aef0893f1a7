import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from wrgsim.errors import ParameterError
from wrgsim.weightdist import (Atom, BoundedTransform, BoundedWeibull, BoundedGumbelRV, Constant,
                               FrechetPareto, GumbelRaV, GumbelRV, GumbelSV, Regime,
                               bounded_from_unbounded, classify)

ALL_FAMILIES = [
    Constant(1.0), Atom(0.3, 0.5), BoundedWeibull(3.0), BoundedGumbelRV(1.0, 1.0),
    bounded_from_unbounded(FrechetPareto(2.0, 1.0)), GumbelRV(1.0), GumbelRV(0.5),
    GumbelRaV(2.0), GumbelSV(1.0), FrechetPareto(3.0), FrechetPareto(1.5, 1.0),
]


def test_inversion_examples():
    assert Constant(1.0).sample(np.random.default_rng(0)) == 1.0
    assert GumbelRV(1.0).from_uniform(math.exp(-2)) == pytest.approx(2.0, rel=1e-12)
    assert FrechetPareto(3.0, 0.5).from_uniform(0.25) == pytest.approx(1.0, rel=1e-14)


def test_tail_prob_examples():
    assert GumbelRV(1.0).tail_prob(3.0) == pytest.approx(math.exp(-3), rel=1e-12)
    assert FrechetPareto(3.0, 0.5).tail_prob(5.0) == pytest.approx(0.01, rel=1e-12)
    assert Atom(0.3, 0.5).tail_prob(1.0) == pytest.approx(0.3, rel=1e-12)


def test_means():
    assert Constant(2.0).mean() == 2.0
    assert GumbelRV(1.0).mean() == pytest.approx(1.0, rel=1e-10)
    assert math.isinf(FrechetPareto(1.5, 1.0).mean())


@pytest.mark.parametrize("fam", [GumbelRV(0.5), GumbelRV(2.0, 1.5), GumbelRaV(2.0), BoundedWeibull(2.5),
                                 BoundedGumbelRV(1.0, 1.0), FrechetPareto(3.0), Atom(0.4, 0.5)])
def test_mean_matches_integrated_survival(fam):
    lo, hi = fam.support()
    upper = hi if math.isfinite(hi) else np.inf
    body = lambda x: fam.tail_prob(x)
    val, _ = integrate.quad(body, 0.0, upper, limit=400)
    assert fam.mean() == pytest.approx(val, rel=1e-6)


def test_norm_seqs_examples():
    s = GumbelRV(1.0).norm_seqs(None, log_n=10.0)
    assert s.a_n == pytest.approx(1.0) and s.b_n == pytest.approx(10.0)
    s = GumbelRaV(2.0).norm_seqs(None, log_n=100.0)
    assert s.b_n == pytest.approx(math.exp(10), rel=1e-12)
    assert s.t_n == pytest.approx(math.exp(-20), rel=1e-10)
    assert FrechetPareto(3.0, 0.5).norm_seqs(10**4).u_n == pytest.approx(50.0, rel=1e-12)
    with pytest.raises(ParameterError):
        GumbelRV(1.0).norm_seqs(1)


def test_extreme_value_centering():
    fam = GumbelRV(1.0, 1.0, 1.0, 0.0)
    n = 1e12
    b = fam.norm_seqs(n).b_n
    assert 0.9 <= n * fam.tail_prob(b) <= 1.1


def test_bounded_transform_identity():
    fam = bounded_from_unbounded(FrechetPareto(2.0, 1.0), 1.0)
    assert fam.support()[1] == pytest.approx(1.0)
    for x in (1.5, 2.0, 7.0):
        assert fam.tail_prob(1 - 1 / x) == pytest.approx(x ** -1, rel=1e-12)
    assert fam.tail_prob(0.5) == pytest.approx(FrechetPareto(2.0, 1.0).tail_prob(2.0), rel=1e-12)
    rng = np.random.default_rng(3)
    u = rng.random(10**4)
    x = FrechetPareto(2.0, 1.0).from_uniform(u)
    assert np.array_equal(fam.from_uniform(u), 1.0 - 1.0 / x)
    with pytest.raises(ParameterError):
        bounded_from_unbounded(BoundedWeibull(2.0))


def test_classification():
    assert classify(GumbelRaV(2.0)).regime is Regime.GUMBEL_RAV
    c = classify(Constant(1.0))
    assert c.regime is Regime.BOUNDED_ATOM and c.q0 == 1.0
    assert classify(BoundedWeibull(3.0)).regime is Regime.BOUNDED_WEIBULL
    assert classify(FrechetPareto(3.0)).regime is Regime.FRECHET
    assert classify(GumbelSV(1.0)).regime is Regime.GUMBEL_SV


def test_invalid_parameters():
    for bad in (lambda: Constant(0.0), lambda: FrechetPareto(1.0), lambda: GumbelRV(-1.0),
                lambda: Atom(1.5, 0.5), lambda: BoundedWeibull(0.5)):
        with pytest.raises(ParameterError):
            bad()


def test_normalize_mean():
    for fam in (GumbelRV(2.0, 3.0, normalize_mean=True), FrechetPareto(3.0, normalize_mean=True),
                GumbelRaV(2.0, normalize_mean=True)):
        assert fam.mean() == pytest.approx(1.0, rel=1e-8)
    assert FrechetPareto(3.0, normalize_mean=True).x_min == pytest.approx(0.5)


@pytest.mark.parametrize("fam", ALL_FAMILIES, ids=lambda f: type(f).__name__)
def test_survival_at_median_matches_samples(fam):
    rng = np.random.default_rng(7)
    draws = fam.sample(rng, 10**5)
    x = float(np.median(draws))
    p = fam.tail_prob(x)
    emp = float(np.mean(draws >= x))
    sigma = math.sqrt(max(p * (1 - p), 1e-12) / 1e5)
    assert abs(emp - p) < 3 * sigma + 1e-12


@pytest.mark.parametrize("fam,n", [(GumbelRV(1.0), 10**3), (GumbelRV(1.0), 10**6),
                                   (GumbelRaV(2.0), 10**6), (GumbelRV(0.5), 10**6)],
                         ids=["rv1-1e3", "rv1-1e6", "rav2-1e6", "rv0.5-1e6"])
def test_rescaled_maximum_sanity(fam, n):
    # n=1e3 is left out for tau=0.5 (a_n/b_n = 2/log n ~ 0.3) and for RaV
    # (max/b_n ~ exp(G/(2 sqrt(log n))) with G Gumbel): the upper 1% of
    # max/b_n still sits above 2 at that size
    rng = np.random.default_rng(11)
    b = fam.norm_seqs(n).b_n
    hits = sum(0.5 <= fam.sample(rng, n).max() / b <= 2 for _ in range(200))
    assert hits >= 198


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 5.0), st.floats(1e-6, 1 - 1e-6))
def test_gumbel_rv_inversion_roundtrip(tau, u):
    fam = GumbelRV(tau, 1.0, 1.0, 0.0)
    x = fam.from_uniform(u)
    assert fam.tail_prob(x) == pytest.approx(u, rel=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.floats(1.05, 6.0), st.floats(0.1, 3.0), st.floats(1e-9, 1 - 1e-9))
def test_pareto_inversion_roundtrip(alpha, x_min, u):
    fam = FrechetPareto(alpha, x_min)
    assert fam.tail_prob(fam.from_uniform(u)) == pytest.approx(u, rel=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.3, 3.0), st.floats(0.0, 2.0), st.floats(0.5, 30.0))
def test_rv_tail_with_corrections_inverts(tau, b, x):
    fam = GumbelRV(tau, 1.0, 2.0, b)
    p = fam.tail_prob(x)
    if 1e-280 < p < 1:
        assert fam.inverse_tail(p) == pytest.approx(x, rel=1e-8)


def test_theta_uses_upper_endpoint():
    # a bounded law on [0, 2) with mean 1 behaves like mean 1/2 in units of x0
    fam = BoundedTransform(FrechetPareto(3.0, 1.0), 2.0)
    assert fam.theta(1) == pytest.approx(1 + fam.mean() / 2.0)
    assert Constant(1.0).theta(1) == 2.0 and Constant(1.0).theta(2) == 1.5
