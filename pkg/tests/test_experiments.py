import json
import math

import numpy as np
import pytest
from scipy import stats

from wrgsim import experiments as ex
from wrgsim.errors import ParameterError
from wrgsim.weightdist import Constant, FrechetPareto, GumbelRaV, GumbelRV
from wrgsim.wrg_core import WrgConfig


def plan(kind, fam, n=2000, **kw):
    return ex.ExperimentPlan(kind, WrgConfig(n=n, family=fam), **kw)


def test_statistics_helpers():
    assert ex.tv_distance([0.2, 0.8], [0.2, 0.8]) == 0.0
    assert ex.tv_distance([1, 0], [0, 1]) == 1.0
    rng = np.random.default_rng(0)
    x = rng.random(10**4)
    assert ex.ks_statistic(x, stats.uniform.cdf) < 1.63 / 100
    assert ex.fit_power_exponent([10, 100, 1000], [1, 0.1, 0.01]) == pytest.approx(-1.0)
    with pytest.raises(ParameterError):
        ex.tv_distance([1.0], [0.5, 0.5])
    with pytest.raises(ParameterError):
        ex.ks_statistic([], stats.uniform.cdf)


def test_plan_validation():
    with pytest.raises(ParameterError):
        plan("WindowGumbel", GumbelRV(0.5))
    with pytest.raises(ParameterError):
        plan("DegreeDist", Constant(), replicas=0)
    with pytest.raises(ValueError):
        plan("NotAKind", Constant())
    p = plan("DegreeDist", Constant(), ladder=[100, 1000])
    assert p.sizes == (100, 1000)
    assert p.digest() == plan("DegreeDist", Constant(), ladder=(100, 1000)).digest()
    assert p.digest() != plan("DegreeDist", Constant(), ladder=(100, 1001)).digest()


def test_degree_dist_and_reproducibility(tmp_path):
    p = plan("DegreeDist", Constant(1.0), n=10**4, replicas=5, base_seed=3)
    a, b = ex.run(p), ex.run(p)
    assert a.statistics == b.statistics
    assert a.statistics["tv"] < 0.02
    assert a.prediction["p_limit"][0] == pytest.approx(0.5)
    json_path, csv_path = a.write(tmp_path)
    assert json_path.name == f"DegreeDist_{a.plan_hash}_seed3.json"
    blob = json.loads(json_path.read_text())
    assert blob["plan"]["base_seed"] == 3 and "regime" in blob["prediction"]
    assert len(csv_path.read_text().splitlines()) == 6


def test_degree_dist_m2_zero_fraction():
    p = ex.ExperimentPlan("DegreeDist", WrgConfig(n=20000, m=2, family=Constant(1.0)), replicas=3)
    rep = ex.run(p)
    assert rep.summary["p0"]["mean"] == pytest.approx(1 / 3, abs=0.01)


def test_replica_streams_are_independent_of_order():
    p = plan("MaxDegreeFirstOrder", GumbelRV(1.0), n=3000, replicas=4, base_seed=9)
    rows = [ex._observe(p, 3000, r) for r in range(4)]
    rev = [ex._observe(p, 3000, r) for r in reversed(range(4))]
    assert [r["max_degree"] for r in rows] == [r["max_degree"] for r in reversed(rev)]


def test_conditional_only_uses_the_same_weights():
    full = plan("MaxDegreeFirstOrder", GumbelRV(1.0), n=3000, replicas=1, base_seed=2)
    cond = plan("MaxDegreeFirstOrder", GumbelRV(1.0), n=3000, replicas=1, base_seed=2, conditional_only=True)
    a, b = ex._observe(full, 3000, 0), ex._observe(cond, 3000, 0)
    assert a["cond_ratio"] == b["cond_ratio"]
    assert "max_degree" not in b


def test_max_first_order_report_embeds_prediction():
    rep = ex.run(plan("MaxDegreeFirstOrder", Constant(1.0), replicas=3, ladder=(1000, 10000)))
    preds = rep.prediction["levels"]
    assert [p["n"] for p in preds] == [1000, 10000]
    assert preds[0]["regime"].startswith("Bounded-Atom")
    assert preds[0]["location"]["tag"] == "CONJECTURE"
    assert len(rep.statistics["ratio_medians"]) == 2


def test_frechet_limit_reports_ks():
    rep = ex.run(plan("FrechetLimit", FrechetPareto(3.0, normalize_mean=True), n=5000, replicas=60))
    assert "ks_ratio_frechet" in rep.statistics
    assert rep.statistics["limit_median"] == pytest.approx(math.sqrt(2 / math.log(2)))
    with pytest.raises(ParameterError):
        ex.run(plan("FrechetLimit", GumbelRV(1.0)))


def test_infinite_mean_reference():
    rep = ex.run(plan("MaxDegreeFirstOrder", FrechetPareto(1.5, 1.0), n=5000, replicas=10, g_min=1e-2))
    assert "ks_ratio_z" in rep.statistics


def test_window_examples():
    w = ex.WindowSpec(1.0, math.e, gamma=2 / 3)
    rep = ex.run(ex.ExperimentPlan("WindowGumbel", WrgConfig(n=10**4, family=GumbelRV(0.5)), replicas=20,
                                   window=w, conditional_only=True))
    assert rep.prediction["gumbel_location"] == 0.0
    shifted = ex.WindowSpec(1.0, math.e, gamma=2 / 3, zeta0=0.1)
    rep = ex.run(ex.ExperimentPlan("WindowGumbel", WrgConfig(n=10**4, family=GumbelRV(0.5)), replicas=5,
                                   window=shifted, conditional_only=True))
    assert rep.prediction["gumbel_location"] == pytest.approx(-0.225)
    rav = ex.ExperimentPlan("WindowGumbel", WrgConfig(n=10**5, family=GumbelRaV(2.0)), replicas=5,
                            window=ex.WindowSpec(), conditional_only=True)
    assert "ks_cond_window_stat" in ex.run(rav).statistics
    with pytest.raises(ParameterError):
        ex.run(ex.ExperimentPlan("WindowGumbel", WrgConfig(n=1000, family=Constant()), window=w))


def test_empty_window_rejected():
    w = ex.WindowSpec(1.0, 1.0001, gamma=0.01)
    with pytest.raises(ParameterError):
        ex.run(ex.ExperimentPlan("WindowGumbel", WrgConfig(n=100, family=GumbelRV(0.5)), replicas=1,
                                 window=w, conditional_only=True))


def test_second_order_targets_and_regime_check():
    rep = ex.run(plan("MaxDegreeSecondOrder", GumbelRV(1.0), n=10**4, replicas=3, conditional_only=True))
    assert rep.statistics["target"] == 0.5
    rep = ex.run(plan("MaxDegreeSecondOrder", GumbelRaV(2.0), n=10**5, replicas=2, conditional_only=True))
    assert rep.statistics["target"] == pytest.approx(0.25)
    with pytest.raises(ParameterError):
        ex.run(plan("MaxDegreeSecondOrder", Constant()))


def test_concentration_nonnegative():
    rep = ex.run(plan("Concentration", GumbelRV(1.0), replicas=4, ladder=(1000, 5000)))
    assert all(row["concentration"] >= 0 for row in rep.observables)
    with pytest.raises(ParameterError):
        ex.run(plan("Concentration", Constant()))


def test_zero_degree_fraction():
    assert ex.zero_degree_exponent_bound(1.5) == pytest.approx(1 / 3)
    assert ex.zero_degree_exponent_bound(1.2) == pytest.approx(1 / 6)
    rep = ex.run(plan("ZeroDegreeFraction", FrechetPareto(1.5, 1.0), replicas=3, ladder=(1000, 4000)))
    assert all(0 <= row["zero_fraction"] <= 1 for row in rep.observables)
    assert "fitted_exponent" in rep.statistics
    with pytest.raises(ParameterError):
        ex.run(plan("ZeroDegreeFraction", FrechetPareto(3.0)))


def test_workers_match_serial():
    p = plan("MaxDegreeFirstOrder", GumbelRV(1.0), n=2000, replicas=4, base_seed=5)
    par = ex.ExperimentPlan(p.kind, p.config, replicas=4, base_seed=5, workers=2)
    assert ex.run(p).statistics == ex.run(par).statistics
    assert [r["max_degree"] for r in ex.run(p).observables] == [r["max_degree"] for r in ex.run(par).observables]
