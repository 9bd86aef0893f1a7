import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wrgsim.errors import ParameterError, ResourceError
from wrgsim.weightdist import Constant, FrechetPareto, GumbelRaV, GumbelRV
from wrgsim.wrg_core import (FenwickSampler, Variant, WrgConfig, compare_samplers, conditional_means,
                             grow, harmonic_residual, linear_scan_indices, max_degree_stats,
                             prefix_and_harmonic, read_snapshot, sampler_oracle_check,
                             write_snapshot)


def test_convention_defining_case():
    w = [1.0, 1.0, 2.0]
    tree = FenwickSampler.from_weights(w)
    assert tree.total == 4.0
    assert tree.sample(np.array([0.5]))[0] == 2
    assert linear_scan_indices(w, np.array([2.0]))[0] == 2
    one = FenwickSampler.from_weights([3.0])
    assert list(one.sample(np.array([0.0, 0.3, 0.999]))) == [1, 1, 1]


def test_fenwick_prefix_and_append():
    rng = np.random.default_rng(0)
    w = rng.exponential(size=1000)
    built = FenwickSampler.from_weights(w)
    grown = FenwickSampler(1)
    for x in w:
        grown.append(x)
    idx = np.arange(1, 1001)
    assert np.allclose(built.prefix(idx), np.cumsum(w), rtol=1e-12)
    assert np.array_equal(built.tree[1:1001], grown.tree[1:1001])
    assert grown.total == pytest.approx(math.fsum(w), rel=1e-15)


def test_sampler_oracle_large():
    rng = np.random.default_rng(2)
    w = rng.exponential(size=10**6)
    assert compare_samplers(w, rng.random(10**6)) is None


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(1e-3, 1e3), min_size=1, max_size=200), st.integers(0, 2**32 - 1))
def test_fenwick_matches_linear_scan(weights, seed):
    rng = np.random.default_rng(seed)
    assert sampler_oracle_check(np.array(weights), 300, rng)


def test_sampler_check_rejects_bad_weights(rng):
    with pytest.raises(ParameterError):
        sampler_oracle_check(np.array([1.0, 0.0]), 10, rng)
    with pytest.raises(ParameterError):
        FenwickSampler.from_weights([1.0, -1.0])


def test_two_vertices():
    for fam in (Constant(1.0), GumbelRV(1.0), FrechetPareto(1.5, 1.0)):
        snap = grow(WrgConfig(n=2, m=1, family=fam, seed=4))
        assert list(snap.in_degrees) == [1, 0]
        snap = grow(WrgConfig(n=2, m=1, family=fam, seed=4, variant="random"))
        assert list(snap.in_degrees) == [1, 0]


@pytest.mark.parametrize("fam", [Constant(1.0), GumbelRV(0.5), GumbelRaV(2.0), FrechetPareto(1.5, 1.0)],
                         ids=lambda f: type(f).__name__)
@pytest.mark.parametrize("m", [1, 2, 5])
def test_degree_sum_conservation(fam, m):
    snap = grow(WrgConfig(n=5000, m=m, family=fam, seed=9))
    assert int(snap.in_degrees.sum()) == m * 4999
    assert snap.in_degrees[-1] == 0


def test_determinism():
    cfg = WrgConfig(n=20000, m=3, family=GumbelRV(1.0), seed=123)
    a, b = grow(cfg), grow(cfg)
    assert np.array_equal(a.in_degrees, b.in_degrees)
    assert np.array_equal(a.weights, b.weights)
    c = grow(WrgConfig(n=20000, m=3, family=GumbelRV(1.0), seed=124))
    assert not np.array_equal(a.in_degrees, c.in_degrees)


def test_rrt_start():
    # Z_3(1) = 2 iff vertex 3 picks vertex 1, probability 1/2 under constant weights
    rng = np.random.default_rng(5)
    reps = 10**5
    hits = 0
    for _ in range(reps // 1000):
        for _ in range(1000):
            hits += grow(WrgConfig(n=3, family=Constant(1.0)), rng).in_degrees[0] == 2
    p = hits / reps
    assert abs(p - 0.5) < 3 * math.sqrt(0.25 / reps)


def test_conditional_means_examples():
    assert np.allclose(conditional_means(np.ones(3), 1), [1.5, 0.5, 0.0])
    rng = np.random.default_rng(1)
    w = rng.exponential(size=50)
    cm = conditional_means(w, 2)
    assert cm[-1] == 0.0
    s = np.cumsum(w)
    direct = [2 * w[i] * sum(1 / s[j] for j in range(i, 49)) for i in range(50)]
    assert np.allclose(cm, direct, rtol=1e-12)


def test_conditional_mean_is_mean_of_growth():
    rng = np.random.default_rng(8)
    w = np.array([3.0, 1.0, 0.5, 2.0, 1.0, 1.0])
    total = np.zeros(6)
    reps = 20000
    for _ in range(reps):
        fam = FixedWeights(w)
        total += grow(WrgConfig(n=6, m=2, family=fam), rng).in_degrees
    emp = total / reps
    assert np.allclose(emp, conditional_means(w, 2), atol=0.03)


class FixedWeights(Constant):
    """A deterministic weight vector dressed as a family, for tests."""

    def __init__(self, w):
        object.__setattr__(self, "c", 1.0)
        object.__setattr__(self, "normalize_mean", False)
        object.__setattr__(self, "_w", np.asarray(w, dtype=float))

    def sample(self, rng, size=None):
        return self._w.copy()


def test_max_degree_stats():
    assert max_degree_stats([2, 0, 1]) == (2, 1)
    assert max_degree_stats([2, 2, 0]) == (2, 1)
    assert max_degree_stats([0, 0, 5]) == (5, 3)
    with pytest.raises(ParameterError):
        max_degree_stats([])


def test_harmonic_residual_values():
    snap = grow(WrgConfig(n=3, family=Constant(1.0), seed=0))
    assert harmonic_residual(snap) == pytest.approx(1.5 - math.log(3), abs=1e-14)
    big = grow(WrgConfig(n=10**6, family=Constant(1.0), seed=0))
    assert abs(harmonic_residual(big) - 0.5772156649) < 1e-5
    # streaming (long-double cumulative) vs batch math.fsum on the same weights
    two = grow(WrgConfig(n=10**6, family=Constant(2.0), seed=0))
    batch = math.fsum(1.0 / (2.0 * j) for j in range(1, 10**6)) - math.log(10**6)
    assert harmonic_residual(two) == pytest.approx(batch, abs=1e-12)


def test_harmonic_residual_cauchy():
    fam = GumbelRV(1.0)
    rng = np.random.default_rng(17)
    w = fam.sample(rng, 2 * 10**6)
    _, h = prefix_and_harmonic(w)
    s = np.cumsum(w)
    y = lambda n: math.fsum(1.0 / s[: n - 1]) - math.log(n)
    assert abs(y(2 * 10**6) - y(10**6)) < 1e-2
    assert h is not None


def test_random_outdegree_cap():
    with pytest.raises(ResourceError):
        grow(WrgConfig(n=200, family=Constant(1.0), variant=Variant.RANDOM, cap=100))
    snap = grow(WrgConfig(n=300, family=Constant(1.0), variant="random", seed=2))
    assert snap.effective_m == 1
    assert snap.in_degrees[-1] == 0


def test_snapshot_roundtrip(tmp_path):
    snap = grow(WrgConfig(n=500, m=2, family=GumbelRV(1.0, normalize_mean=True), seed=3))
    csv_path, json_path = write_snapshot(snap, tmp_path, "run")
    back = read_snapshot(csv_path)
    assert np.array_equal(back.in_degrees, snap.in_degrees)
    assert np.array_equal(back.weights, snap.weights)
    assert back.config() == snap.config()
    header = csv_path.read_text().splitlines()[0]
    assert header == "i,weight,in_degree,cond_mean"


def test_config_validation():
    for bad in (dict(n=0), dict(n=10, m=0), dict(n=2.5), dict(n=10, seed=-1)):
        with pytest.raises(ParameterError):
            WrgConfig(**bad)
    cfg = WrgConfig(n=100, m=2, family=FrechetPareto(3.0, normalize_mean=True), seed=5)
    assert WrgConfig.from_config(cfg.to_config()) == cfg
