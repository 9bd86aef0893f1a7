"""The acceptance suite: twelve desk-scale reproductions of the limit theory.

Each ``criterion_<k>`` runs its experiment at the stated size and returns a
:class:`CriterionResult`; ``run_suite`` runs all of them.  Seeds for each
criterion derive from one suite seed, so a suite run is reproducible from
that single number.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import experiments as ex
from . import limit_theory as lt
from . import ppp_limits as pl
from .weightdist import Constant, FrechetPareto, GumbelRaV, GumbelRV
from .wrg_core import FenwickSampler, WrgConfig, grow, linear_scan_indices

DEFAULT_SEED = 20240917


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    metrics: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] criterion {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


def criterion_seed(seed: int, number: int) -> int:
    return int(np.random.SeedSequence([int(seed), int(number)]).generate_state(1, np.uint64)[0])


def _timed(number, name, body, seed):
    t0 = time.perf_counter()
    passed, detail, metrics = body(criterion_seed(seed, number))
    return CriterionResult(number, name, bool(passed), detail, metrics, time.perf_counter() - t0)


# --------------------------------------------------------------------------


def criterion_1(seed=DEFAULT_SEED, replicas=50, n=10**5):
    def body(s):
        t0 = time.perf_counter()
        plan = ex.ExperimentPlan("DegreeDist", WrgConfig(n=n, family=Constant(1.0)),
                                 replicas=replicas, base_seed=s, kmax=30)
        rep = ex.run_degree_dist(plan)
        secs = time.perf_counter() - t0
        tv = rep.statistics["tv"]
        geo = [2.0 ** -(k + 1) for k in range(31)]
        oracle_gap = max(abs(a - b) for a, b in zip(rep.prediction["p_limit"], geo))
        ok = tv < 0.01 and secs < 30 and oracle_gap < 1e-12
        return ok, f"TV={tv:.5f} (<0.01), runtime {secs:.1f}s (<30s)", \
            {"tv": tv, "runtime": secs, "pk_vs_geometric": oracle_gap}
    return _timed(1, "RRT degree law", body, seed)


def criterion_2(seed=DEFAULT_SEED, draws=10**6):
    def body(s):
        fam = FrechetPareto(3.0)
        rng = np.random.default_rng(s)
        w = fam.sample(rng, draws)
        worst = 0.0
        cells = {}
        for m in (1, 2):
            for k in (0, 1, 5, 20):
                p = lt.pk_limit(fam, m, k)
                mc = float(np.mean(lt.pk_integrand(fam, m, k, w)))
                sigma = math.sqrt(p * (1 - p) / draws)
                z = abs(p - mc) / sigma
                worst = max(worst, z)
                cells[f"m{m}_k{k}"] = {"quadrature": p, "monte_carlo": mc, "z": z}
        p0 = lt.pk_limit(fam, 1, 0)
        closed = 0.5 * math.log(3.0)
        ok = worst < 4 and abs(p0 - closed) < 1e-9
        return ok, f"max |quad-MC| = {worst:.2f} sigma (<4), |p(0) - ln3/2| = {abs(p0 - closed):.1e}", \
            {"cells": cells, "p0_error": abs(p0 - closed)}
    return _timed(2, "quadrature vs Monte Carlo", body, seed)


def criterion_3(seed=DEFAULT_SEED, replicas=20, ladder=ex.DEFAULT_LADDER):
    def body(s):
        t0 = time.perf_counter()
        plan = ex.ExperimentPlan("MaxDegreeFirstOrder", WrgConfig(n=ladder[-1], family=Constant(1.0)),
                                 replicas=replicas, base_seed=s, ladder=ladder)
        rep = ex.run_max_first_order(plan)
        secs = time.perf_counter() - t0
        target = 1 / math.log(2)
        med = []
        for lv in rep.summary["levels"]:
            vals = [row["max_degree"] / math.log(row["n"]) for row in rep.observables if row["n"] == lv["n"]]
            med.append(float(np.median(vals)))
        dist = [abs(x - target) for x in med]
        monotone = all(b <= a for a, b in zip(dist, dist[1:]))
        in_band = 1.2 <= med[-1] <= 1.7
        ok = monotone and in_band and secs < 300
        text = ", ".join(f"{x:.3f}" for x in med)
        return ok, (f"medians of max/ln n = [{text}] (target {target:.4f}); distance non-increasing: "
                    f"{monotone}; final in [1.2,1.7]: {in_band}; runtime {secs:.0f}s"), \
            {"medians": med, "distances": dist, "runtime": secs}
    return _timed(3, "bounded max degree", body, seed)


def criterion_4(seed=DEFAULT_SEED, replicas=50, n=10**6):
    def body(s):
        fam = GumbelRV(1.0, 1.0, 1.0, 0.0, normalize_mean=True)
        plan = ex.ExperimentPlan("MaxDegreeFirstOrder", WrgConfig(n=n, family=fam), replicas=replicas,
                                 base_seed=s, conditional_only=True)
        rep = ex.run_max_first_order(plan)
        lv = rep.summary["levels"][0]
        ratio = lv["cond_ratio"]["median"]
        loc = lv["cond_loc_exponent"]["median"]
        ok = 0.7 <= ratio <= 1.3 and 0.4 <= loc <= 0.6
        return ok, f"median conditional-mean ratio {ratio:.3f} (in [0.7,1.3]), location exponent {loc:.3f} (in [0.4,0.6])", \
            {"ratio": ratio, "location_exponent": loc}
    return _timed(4, "Gumbel RV first order", body, seed)


def criterion_5(seed=DEFAULT_SEED, replicas=500, n=10**6):
    def body(s):
        tau = 0.5
        win = ex.WindowSpec(1.0, math.e, gamma=lt.gamma_exponent(tau))
        plan = ex.ExperimentPlan("WindowGumbel", WrgConfig(n=n, family=GumbelRV(tau)), replicas=replicas,
                                 base_seed=s, window=win, conditional_only=True)
        rep = ex.run_window_gumbel(plan)
        d = rep.statistics["ks_cond_window_stat"]["statistic"]
        dl = rep.statistics["ks_cond_window_loc"]["statistic"]
        return d < 0.08, f"KS to Gumbel(loc 0) = {d:.4f} (<0.08); window location vs e^U KS = {dl:.4f}", \
            {"ks": d, "ks_location": dl}
    return _timed(5, "Gumbel window limit", body, seed)


def criterion_6(seed=DEFAULT_SEED, replicas=500, n=10**5):
    def body(s):
        plan = ex.ExperimentPlan("MaxDegreeFirstOrder", WrgConfig(n=n, family=FrechetPareto(3.0)),
                                 replicas=replicas, base_seed=s)
        rep = ex.run_max_first_order(plan)
        med = rep.summary["levels"][0]["ratio"]["median"]
        target = math.sqrt(2 / math.log(2))
        rel = abs(med - target) / target
        d = rep.statistics["ks_ratio_frechet"]["statistic"]
        dl = rep.statistics["ks_loc_frac_I_alpha"]["statistic"]
        ok = rel < 0.25 and d < 0.15 and dl < 0.1
        return ok, (f"median max/u_n {med:.3f} ({100 * rel:.1f}% from {target:.3f}, <25%); "
                    f"KS Frechet {d:.4f} (<0.15); KS location {dl:.4f} (<0.1)"), \
            {"median": med, "relative_error": rel, "ks": d, "ks_location": dl}
    return _timed(6, "Frechet limit law", body, seed)


def criterion_7(seed=DEFAULT_SEED, draws=10**5):
    def body(s):
        rng = np.random.default_rng(s)
        ppp = pl.gumbel_window_max_ppp_sample(1.0, math.e, rng, draws)
        inv = pl.gumbel_window_max_sample(1.0, math.e, rng, draws)
        d1, _ = ex.ks_two_sample(ppp, inv)
        a = pl.gumbel_window_max_ppp_sample(1.0, 2.0, rng, draws)
        b = pl.gumbel_window_max_ppp_sample(10.0, 20.0, rng, draws)
        d2, _ = ex.ks_two_sample(a, b)
        ok = d1 < 0.01 and d2 < 0.01
        return ok, f"PPP vs inversion KS {d1:.4f} (<0.01); (1,2) vs (10,20) KS {d2:.4f} (<0.01)", \
            {"ks_ppp_vs_inversion": d1, "ks_ratio_invariance": d2}
    return _timed(7, "PPP self-consistency", body, seed)


def criterion_8(seed=DEFAULT_SEED, samples=10**4):
    def body(s):
        z = pl.z_functional([(0.25, 2.0), (0.5, 1.0)], 1)
        exact = 2 * (0.25 / 2 + 0.5 / 3)
        rng = np.random.default_rng(s)
        coarse = float(np.median(pl.z_sampler(1.5, 1, 1e-2, rng, samples)))
        fine = float(np.median(pl.z_sampler(1.5, 1, 1e-3, rng, samples)))
        shift = abs(coarse - fine) / fine
        ok = abs(z - exact) < 1e-12 and shift < 0.05
        return ok, f"two-point Z = {z:.12f} (exact {exact:.12f}); median shift g_min 1e-2 vs 1e-3 = {100 * shift:.2f}% (<5%)", \
            {"z": z, "median_coarse": coarse, "median_fine": fine, "shift": shift}
    return _timed(8, "Z functional", body, seed)


def criterion_9(seed=DEFAULT_SEED, size=10**6, draws=10**6):
    def body(s):
        rng = np.random.default_rng(s)
        w = rng.exponential(size=size)
        u = rng.random(draws)
        tree = FenwickSampler.from_weights(w)
        thresholds = u * tree.total
        fen = tree.search(thresholds)
        lin = linear_scan_indices(w, thresholds)
        mismatches = int(np.count_nonzero(fen != lin))
        runs = []
        for fam in (Constant(1.0), GumbelRV(1.0), FrechetPareto(1.5), GumbelRaV(2.0)):
            for m in (1, 3):
                cfg = WrgConfig(n=20000, m=m, family=fam, seed=int(rng.integers(2**63)))
                snap = grow(cfg)
                runs.append(int(snap.in_degrees.sum()) == m * (cfg.n - 1))
        ok = mismatches == 0 and all(runs)
        return ok, f"{mismatches} index mismatches over {draws} draws; degree sum exact in {sum(runs)}/{len(runs)} runs", \
            {"mismatches": mismatches, "degree_sum_runs": len(runs)}
    return _timed(9, "sampler oracle", body, seed)


def criterion_10(seed=DEFAULT_SEED, replicas=30, ladder=(10**4, 10**5, 10**6)):
    def body(s):
        plan = ex.ExperimentPlan("Concentration", WrgConfig(n=ladder[-1], family=GumbelRV(1.0)),
                                 replicas=replicas, base_seed=s, ladder=ladder)
        rep = ex.run_concentration(plan)
        med = rep.statistics["medians"]
        ok = rep.statistics["strictly_decreasing"] and med[-1] < 0.2
        return ok, f"medians [{', '.join(f'{x:.4f}' for x in med)}] strictly decreasing, final < 0.2", \
            {"medians": med}
    return _timed(10, "concentration", body, seed)


def criterion_11(seed=DEFAULT_SEED, replicas=20):
    def body(s):
        out = {}
        for name, fam, ladder, band in (
            ("RV tau=1", GumbelRV(1.0), (10**4, 10**5, 10**6, 10**7), (0.3, 0.7)),
            ("RaV tau=2", GumbelRaV(2.0), (10**5, 10**6, 10**7), (0.1, 0.4)),
        ):
            plan = ex.ExperimentPlan("MaxDegreeSecondOrder", WrgConfig(n=ladder[-1], family=fam),
                                     replicas=replicas, base_seed=s, ladder=ladder, conditional_only=True)
            rep = ex.run_second_order(plan)
            med = rep.statistics["cond_second_medians"]
            dist = rep.statistics["cond_second_distance"]
            out[name] = {"target": rep.statistics["target"], "medians": med, "band": band,
                         "in_band": band[0] <= med[-1] <= band[1], "toward_target": dist[-1] < dist[0]}
        ok = all(v["in_band"] and v["toward_target"] for v in out.values())
        text = "; ".join(
            f"{k}: medians [{', '.join(f'{x:.3f}' for x in v['medians'])}] target {v['target']:g}, "
            f"final in {list(v['band'])}: {v['in_band']}, closer than first: {v['toward_target']}"
            for k, v in out.items())
        return ok, text, out
    return _timed(11, "second-order constants", body, seed)


def criterion_12(seed=DEFAULT_SEED, replicas=20, ladder=(10**4, 10**5, 10**6)):
    def body(s):
        alpha = 1.5
        plan = ex.ExperimentPlan("ZeroDegreeFraction", WrgConfig(n=ladder[-1], family=FrechetPareto(alpha)),
                                 replicas=replicas, base_seed=s, ladder=ladder)
        rep = ex.run_zero_degree_fraction(plan)
        fit = rep.statistics["fitted_exponent"]
        target = ex.zero_degree_exponent_bound(alpha)
        ok = abs(fit - target) <= 0.15
        return ok, f"fitted exponent {fit:.3f} vs {target:.3f} (+-0.15)", \
            {"fitted_exponent": fit, "target": target, "nonzero_fraction": rep.statistics["nonzero_fraction"]}
    return _timed(12, "zero-degree fraction", body, seed)


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 13)}


def run_suite(seed=DEFAULT_SEED, only=None, echo=None):
    """Run the criteria in order; ``echo`` receives each result line."""
    results = []
    for k, fn in CRITERIA.items():
        if only and k not in only:
            continue
        res = fn(seed)
        results.append(res)
        if echo is not None:
            echo(res.line())
    return results
