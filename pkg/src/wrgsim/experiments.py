"""Replicated Monte Carlo runs tying growth to the limit theory.

Every runner takes an :class:`ExperimentPlan` and returns an
:class:`ExperimentReport` holding per-replica observables, summaries, the
theory prediction used, and goodness-of-fit statistics.

Replica ``r`` at graph size ``n`` draws from
``np.random.default_rng([base_seed, r, n])``, so replicas are independent,
order-free, and reproducible from the plan alone.  In ``conditional_only``
mode the weights are drawn from the same stream as a full run, so the
conditional-mean observables coincide with those of the full run while the
growth step is skipped.

Numeric tolerances used by the acceptance suite are calibration-derived
regression bounds: the limit theorems come without convergence rates.
"""

from __future__ import annotations

import csv
import enum
import hashlib
import json
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np
from scipy import stats

from . import limit_theory as lt
from . import ppp_limits as pl
from .errors import InvariantError, ParameterError
from .weightdist import FrechetPareto, Regime
from .wrg_core import WrgConfig, conditional_means, grow, max_degree_stats, prefix_and_harmonic

log = logging.getLogger(__name__)

DEFAULT_LADDER = (10**4, 10**5, 10**6, 10**7)


class ExperimentKind(str, enum.Enum):
    DEGREE_DIST = "DegreeDist"
    MAX_FIRST_ORDER = "MaxDegreeFirstOrder"
    MAX_SECOND_ORDER = "MaxDegreeSecondOrder"
    WINDOW_GUMBEL = "WindowGumbel"
    FRECHET_LIMIT = "FrechetLimit"
    CONCENTRATION = "Concentration"
    ZERO_DEGREE = "ZeroDegreeFraction"
    LOCATION_SCALING = "LocationScaling"


@dataclass(frozen=True)
class WindowSpec:
    """Index window ``[s l(n) n^gamma, t l(n) n^gamma]``.

    ``gamma=None`` selects the rapidly varying window ``[s t_n n, t t_n n]``.
    The centering factor is ``l(n) = exp(sqrt(zeta0 log n))``, so that
    ``log(l(n))^2 / log n = zeta0``.
    """

    s: float = 1.0
    t: float = math.e
    gamma: float | None = None
    zeta0: float = 0.0

    def __post_init__(self):
        if not 0 < self.s < self.t:
            raise ParameterError(f"window needs 0 < s < t, got s={self.s}, t={self.t}")
        if self.gamma is not None and not 0 < self.gamma <= 1:
            raise ParameterError(f"window gamma must lie in (0, 1], got {self.gamma}")
        if not self.zeta0 >= 0:
            raise ParameterError("zeta0 must be >= 0")


@dataclass(frozen=True)
class ExperimentPlan:
    kind: ExperimentKind
    config: WrgConfig
    replicas: int = 20
    base_seed: int = 0
    window: WindowSpec | None = None
    ladder: tuple[int, ...] = ()
    kmax: int = 30
    conditional_only: bool = False
    g_min: float = 1e-3
    workers: int = 1

    def __post_init__(self):
        object.__setattr__(self, "kind", ExperimentKind(self.kind))
        object.__setattr__(self, "ladder", tuple(int(n) for n in self.ladder))
        if int(self.replicas) != self.replicas or self.replicas < 1:
            raise ParameterError(f"replicas must be >= 1, got {self.replicas}")
        if self.kind is ExperimentKind.WINDOW_GUMBEL and self.window is None:
            raise ParameterError("WindowGumbel needs a window")
        if not 0 <= int(self.base_seed) < 2**64:
            raise ParameterError("base_seed must fit in 64 bits")
        if any(n < 3 for n in self.ladder):
            raise ParameterError("ladder sizes must be >= 3")

    @property
    def sizes(self):
        return self.ladder or (self.config.n,)

    def to_dict(self):
        return {
            "kind": self.kind.value,
            "config": self.config.to_config(),
            "replicas": self.replicas,
            "base_seed": int(self.base_seed),
            "window": None if self.window is None else asdict(self.window),
            "ladder": list(self.ladder),
            "kmax": self.kmax,
            "conditional_only": self.conditional_only,
            "g_min": self.g_min,
        }

    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:12]


@dataclass
class ExperimentReport:
    kind: str
    plan: dict
    plan_hash: str
    observables: list[dict]
    summary: dict
    prediction: dict
    statistics: dict
    seeds: list[list[int]]
    wall_clock: float
    notes: list[str] = field(default_factory=list)

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(_jsonable(self.to_dict()), indent=2, sort_keys=True)

    def write(self, out_dir) -> tuple[Path, Path]:
        """``<kind>_<hash>_seed<base>.json`` plus the per-replica CSV."""
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        stem = f"{self.kind}_{self.plan_hash}_seed{self.plan['base_seed']}"
        json_path = out_dir / f"{stem}.json"
        json_path.write_text(self.to_json(), encoding="utf-8")
        csv_path = out_dir / f"{stem}.csv"
        cols = sorted({k for row in self.observables for k in row
                       if np.ndim(row[k]) == 0})
        with open(csv_path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(cols)
            for row in self.observables:
                writer.writerow([_fmt(row.get(c)) for c in cols])
        return json_path, csv_path


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else repr(x)
    if isinstance(obj, enum.Enum):
        return obj.value
    return obj


# --------------------------------------------------------------------------
# statistics


def ks_statistic(samples, cdf) -> float:
    """Sup distance between the empirical CDF of ``samples`` and ``cdf``."""
    return float(ks_test(samples, cdf)[0])


def ks_test(samples, cdf):
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise ParameterError("KS statistic needs samples")
    res = stats.kstest(x, cdf)
    return float(res.statistic), float(res.pvalue)


def ks_two_sample(a, b):
    res = stats.ks_2samp(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
    return float(res.statistic), float(res.pvalue)


def tv_distance(p, q) -> float:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape:
        raise ParameterError("TV distance needs vectors on the same support")
    return 0.5 * float(np.abs(p - q).sum())


def summarize(values) -> dict:
    x = np.asarray([v for v in values if v is not None], dtype=float)
    if x.size == 0:
        return {}
    q = np.quantile(x, [0.05, 0.25, 0.5, 0.75, 0.95])
    return {"count": int(x.size), "mean": float(x.mean()), "median": float(q[2]),
            "q05": float(q[0]), "q25": float(q[1]), "q75": float(q[3]), "q95": float(q[4])}


def fit_power_exponent(sizes, values) -> float:
    """Least-squares slope of log(values) on log(sizes)."""
    x = np.log(np.asarray(sizes, dtype=float))
    y = np.log(np.asarray(values, dtype=float))
    if x.size < 2 or not np.all(np.isfinite(y)):
        raise ParameterError("power fit needs >= 2 positive values")
    return float(np.polyfit(x, y, 1)[0])


# --------------------------------------------------------------------------
# replicas


def replica_rng(base_seed, r, n):
    return np.random.default_rng([int(base_seed), int(r), int(n)])


@dataclass(frozen=True, eq=False)
class ReplicaState:
    n: int
    weights: np.ndarray
    cond_means: np.ndarray
    in_degrees: np.ndarray | None


def replica_state(config: WrgConfig, rng, conditional_only=False) -> ReplicaState:
    if conditional_only:
        w = np.atleast_1d(config.family.sample(rng, config.n)).astype(float)
        _, h = prefix_and_harmonic(w)
        m = 1 if config.variant.value == "random" else config.m
        return ReplicaState(config.n, w, conditional_means(w, m, harmonic=h), None)
    snap = grow(config, rng)
    return ReplicaState(config.n, snap.weights, snap.cond_mean_degrees(), snap.in_degrees)


def _window_bounds(window: WindowSpec, family, m, n):
    L = math.log(n)
    centre_log = math.sqrt(window.zeta0 * L)
    if window.gamma is None:
        b = family.with_mean_one().norm_seqs(n, m).b_n
        cls = family.classify()
        scale_log = L - cls.tau * L / math.log(b)
    else:
        scale_log = window.gamma * L
    scale = math.exp(scale_log + centre_log)
    lo = max(1, math.ceil(window.s * scale))
    hi = min(n, math.floor(window.t * scale))
    if lo > hi:
        raise ParameterError(f"window [{window.s * scale:g}, {window.t * scale:g}] holds no index at n={n}")
    return lo, hi, scale


def _window_norm(plan: ExperimentPlan, n):
    """(centering, scale) of the window statistic."""
    fam = plan.config.family
    m = plan.config.m
    cls = fam.classify()
    one = fam.with_mean_one()
    L = math.log(n)
    if plan.window.gamma is None:
        if cls.regime is not Regime.GUMBEL_RAV:
            raise ParameterError("the t_n window applies to the rapidly varying case")
        b = one.norm_seqs(n, m).b_n
        log_inv_t = cls.tau * L / math.log(b)
        seq = one.norm_seqs(None, m, log_n=L - log_inv_t)
        return m * seq.b_n * log_inv_t, m * seq.a_n * log_inv_t
    if cls.regime is not Regime.GUMBEL_RV:
        raise ParameterError("the n^gamma window applies to the regularly varying case")
    g = plan.window.gamma
    seq = one.norm_seqs(None, m, log_n=g * L)
    return m * (1 - g) * seq.b_n * L, m * (1 - g) * seq.a_n * L


def _observe(plan: ExperimentPlan, n: int, r: int) -> dict:
    """All per-replica observables for one (n, r)."""
    config = replace(plan.config, n=n)
    kind = plan.kind
    rng = replica_rng(plan.base_seed, r, n)
    st = replica_state(config, rng, plan.conditional_only)
    z = st.in_degrees
    cm = st.cond_means
    fam, m = config.family, config.m
    row = {"replica": r, "n": n}
    if z is not None:
        row["degree_sum"] = int(z.sum())
    log_n = math.log(n)

    if kind is ExperimentKind.DEGREE_DIST:
        row["counts"] = np.bincount(np.minimum(z, plan.kmax + 1), minlength=plan.kmax + 2).tolist()
        row["p0"] = float(np.mean(z == 0))
        edges = _gamma_edges(fam)
        bins = np.searchsorted(edges, st.weights, side="left") - 1
        joint = np.zeros((4, len(edges) - 1))
        for k in range(4):
            sel = z == k
            joint[k] = np.bincount(bins[sel], minlength=len(edges) - 1)[: len(edges) - 1]
        row["gamma_counts"] = (joint / n).tolist()
        return row

    if kind in (ExperimentKind.MAX_FIRST_ORDER, ExperimentKind.FRECHET_LIMIT,
                ExperimentKind.LOCATION_SCALING, ExperimentKind.MAX_SECOND_ORDER):
        pred = lt.max_degree_prediction(fam, m, n)
        cmax, cidx = max_degree_stats(cm)
        row["cond_ratio"] = float(cmax / pred.first_order)
        row["cond_loc_exponent"] = math.log(cidx) / log_n
        row["cond_loc_frac"] = cidx / n
        if z is not None:
            zmax, zidx = max_degree_stats(z)
            row["max_degree"] = int(zmax)
            row["ratio"] = zmax / pred.first_order
            row["loc_exponent"] = math.log(zidx) / log_n
            row["loc_frac"] = zidx / n
        if kind is ExperimentKind.MAX_SECOND_ORDER:
            if pred.second_order_scale is None:
                raise ParameterError(f"no second-order statement for {pred.regime}")
            row["cond_second"] = (cmax - pred.first_order) / pred.second_order_scale
            if z is not None:
                row["second"] = (row["max_degree"] - pred.first_order) / pred.second_order_scale
        return row

    if kind is ExperimentKind.WINDOW_GUMBEL:
        lo, hi, scale = _window_bounds(plan.window, fam, m, n)
        centre, spread = _window_norm(plan, n)
        cmax, cidx = max_degree_stats(cm[lo - 1:hi])
        row["cond_window_stat"] = (cmax - centre) / spread
        row["cond_window_loc"] = (lo - 1 + cidx) / scale
        row["window"] = f"{lo}-{hi}"
        if z is not None:
            zmax, zidx = max_degree_stats(z[lo - 1:hi])
            row["window_stat"] = (zmax - centre) / spread
            row["window_loc"] = (lo - 1 + zidx) / scale
        return row

    if kind is ExperimentKind.CONCENTRATION:
        b = fam.with_mean_one().norm_seqs(n, m).b_n
        g_n = m * b * log_n
        row["concentration"] = float(np.max(np.abs(z - cm)) / g_n)
        row["max_gap"] = float((z.max() - cm.max()) / g_n)
        return row

    if kind is ExperimentKind.ZERO_DEGREE:
        row["zero_fraction"] = float(np.mean(z == 0))
        return row

    raise ParameterError(f"unhandled experiment kind {kind}")  # pragma: no cover


def _gamma_edges(family):
    """Weight bins for the joint (degree, weight) masses: quartiles of W."""
    qs = [float(family.inverse_tail(p)) for p in (0.75, 0.5, 0.25)]
    return np.unique(np.array([-np.inf, *qs, np.inf]))


def _task(args):
    plan, n, r = args
    return _observe(plan, n, r)


def _collect(plan: ExperimentPlan):
    tasks = [(plan, n, r) for n in plan.sizes for r in range(plan.replicas)]
    if plan.workers > 1:
        with ProcessPoolExecutor(plan.workers) as pool:
            rows = list(pool.map(_task, tasks))
    else:
        rows = [_task(t) for t in tasks]
    if plan.config.variant.value == "fixed":
        for row in rows:
            if "degree_sum" in row and row["degree_sum"] != plan.config.m * (row["n"] - 1):
                raise InvariantError(f"degree sum violated in replica {row['replica']}")
    return rows


def _per_level(rows, keys):
    out = []
    for n in sorted({row["n"] for row in rows}):
        sel = [row for row in rows if row["n"] == n]
        entry = {"n": n}
        for k in keys:
            vals = [row[k] for row in sel if k in row]
            if vals:
                entry[k] = summarize(vals)
        out.append(entry)
    return out


def _report(plan, rows, summary, prediction, statistics, t0, notes=()):
    seeds = sorted({(int(plan.base_seed), row["replica"], row["n"]) for row in rows})
    return ExperimentReport(
        kind=plan.kind.value,
        plan=plan.to_dict(),
        plan_hash=plan.digest(),
        observables=rows,
        summary=summary,
        prediction=prediction,
        statistics=statistics,
        seeds=[list(s) for s in seeds],
        wall_clock=time.perf_counter() - t0,
        notes=list(notes),
    )


def _require_kind(plan, *kinds):
    if plan.kind not in kinds:
        raise ParameterError(f"plan kind {plan.kind.value} does not match this runner")


# --------------------------------------------------------------------------
# runners


def run_degree_dist(plan: ExperimentPlan) -> ExperimentReport:
    """Pooled empirical p_n(k), k <= kmax, against the limiting law."""
    _require_kind(plan, ExperimentKind.DEGREE_DIST)
    if plan.conditional_only:
        raise ParameterError("the degree distribution needs grown graphs")
    t0 = time.perf_counter()
    fam, m, K = plan.config.family, plan.config.m, plan.kmax
    rows = _collect(plan)
    counts = np.sum([row["counts"] for row in rows], axis=0)
    p_emp = counts / counts.sum()
    p_lim = lt.pk_table(fam, m, K)
    p_lim_full = np.append(p_lim, max(0.0, 1.0 - p_lim.sum()))
    tv = tv_distance(p_emp, p_lim_full)
    edges = _gamma_edges(fam)
    joint_emp = np.mean([row["gamma_counts"] for row in rows], axis=0)
    joint_lim = np.array([[lt.gamma_k_mass(fam, m, k, (edges[j], edges[j + 1]))
                           for j in range(len(edges) - 1)] for k in range(4)])
    for row in rows:
        del row["counts"], row["gamma_counts"]
    summary = {"p_empirical": p_emp[:-1].tolist(), "tail_empirical": float(p_emp[-1]),
               "p0": summarize([row["p0"] for row in rows]),
               "gamma_k_empirical": joint_emp.tolist(), "gamma_edges": edges.tolist()}
    prediction = {"p_limit": p_lim.tolist(), "tail_limit": float(p_lim_full[-1]),
                  "gamma_k_limit": joint_lim.tolist(), "regime": str(fam.classify())}
    statistics = {"tv": tv, "gamma_k_max_abs_error": float(np.max(np.abs(joint_emp - joint_lim)))}
    return _report(plan, rows, summary, prediction, statistics, t0)


def _prediction_record(plan, n):
    fam, m = plan.config.family, plan.config.m
    pred = lt.max_degree_prediction(fam, m, n).to_dict()
    pred["location"] = asdict(lt.location_prediction(fam, m))
    pred["n"] = n
    return pred


def run_max_first_order(plan: ExperimentPlan) -> ExperimentReport:
    """max Z / first-order scale and log I_n / log n, raw and conditional."""
    _require_kind(plan, ExperimentKind.MAX_FIRST_ORDER, ExperimentKind.FRECHET_LIMIT,
                  ExperimentKind.LOCATION_SCALING)
    t0 = time.perf_counter()
    fam, m = plan.config.family, plan.config.m
    rows = _collect(plan)
    keys = ("ratio", "cond_ratio", "loc_exponent", "cond_loc_exponent", "loc_frac", "max_degree")
    levels = _per_level(rows, keys)
    predictions = [_prediction_record(plan, n) for n in plan.sizes]
    statistics = {}
    cls = fam.classify()
    notes = []
    if cls.regime is Regime.FRECHET:
        al = cls.alpha
        top = [row for row in rows if row["n"] == plan.sizes[-1]]
        if al > 2:
            for key in ("ratio", "cond_ratio"):
                vals = [row[key] for row in top if key in row]
                if vals:
                    d, p = ks_test(vals, lambda x: pl.frechet_max_cdf(al, m, np.maximum(x, 1e-300)))
                    statistics[f"ks_{key}_frechet"] = {"statistic": d, "pvalue": p}
            for key in ("loc_frac", "cond_loc_frac"):
                vals = [row[key] for row in top if key in row]
                if vals:
                    cdf = lambda x: pl.location_I_alpha_cdf(al, np.clip(x, 1e-300, 1 - 1e-16))
                    d, p = ks_test(vals, cdf)
                    statistics[f"ks_{key}_I_alpha"] = {"statistic": d, "pvalue": p}
            statistics["limit_median"] = float(pl.frechet_max_quantile(al, m, 0.5))
        elif al < 2:
            rng = np.random.default_rng([int(plan.base_seed), 2**32 - 1])
            ref = pl.z_sampler(al, m, plan.g_min, rng, max(2000, 4 * plan.replicas))
            vals = [row["ratio"] for row in top if "ratio" in row]
            if vals:
                d, p = ks_two_sample(vals, ref)
                statistics["ks_ratio_z"] = {"statistic": d, "pvalue": p}
            statistics["z_reference_median"] = float(np.median(ref))
            notes.append(f"Z reference from {len(ref)} truncated-PPP draws, g_min={plan.g_min}")
    if len(plan.sizes) > 1:
        med = [lv["ratio"]["median"] for lv in levels if "ratio" in lv]
        if med:
            statistics["ratio_medians"] = med
    summary = {"levels": levels}
    return _report(plan, rows, summary, {"levels": predictions}, statistics, t0, notes)


def run_frechet_limit(plan: ExperimentPlan) -> ExperimentReport:
    if not isinstance(plan.config.family, FrechetPareto):
        raise ParameterError("FrechetLimit needs a Pareto weight law")
    return run_max_first_order(replace(plan, kind=ExperimentKind.FRECHET_LIMIT))


def run_location_scaling(plan: ExperimentPlan) -> ExperimentReport:
    """log I_n / log n across a ladder; for bounded weights the prediction is
    the conjectured exponent and is reported, never asserted."""
    return run_max_first_order(replace(plan, kind=ExperimentKind.LOCATION_SCALING))


def run_window_gumbel(plan: ExperimentPlan) -> ExperimentReport:
    """Window maximum against the Gumbel law and window location against e^U."""
    _require_kind(plan, ExperimentKind.WINDOW_GUMBEL)
    t0 = time.perf_counter()
    fam = plan.config.family
    cls = fam.classify()
    win = plan.window
    if cls.regime is Regime.GUMBEL_RV and win.gamma is not None:
        if not cls.tau < 1 and not plan.conditional_only:
            log.warning("raw-degree window limit is stated for tau < 1 only")
        tau = cls.tau
    elif cls.regime is Regime.GUMBEL_RAV and win.gamma is None:
        tau = None
        if win.zeta0:
            raise ParameterError("the t_n window takes no zeta0 shift")
    else:
        raise ParameterError("window limit needs an RV law with gamma set or an RaV law with gamma=None")
    rows = _collect(plan)
    loc = pl.gumbel_window_location(win.s, win.t, win.zeta0, tau)
    gcdf = lambda x: pl.gumbel_window_max_cdf(win.s, win.t, x, win.zeta0, tau)
    ucdf = lambda x: pl.location_window_cdf(win.s, win.t, x)
    statistics = {}
    top = [row for row in rows if row["n"] == plan.sizes[-1]]
    for key in ("cond_window_stat", "window_stat"):
        vals = [row[key] for row in top if key in row]
        if vals:
            d, p = ks_test(vals, gcdf)
            statistics[f"ks_{key}"] = {"statistic": d, "pvalue": p}
    for key in ("cond_window_loc", "window_loc"):
        vals = [row[key] for row in top if key in row]
        if vals:
            d, p = ks_test(vals, ucdf)
            statistics[f"ks_{key}"] = {"statistic": d, "pvalue": p}
    levels = _per_level(rows, ("cond_window_stat", "window_stat", "cond_window_loc", "window_loc"))
    prediction = {"gumbel_location": loc, "location_law": f"exp(Unif(log {win.s:g}, log {win.t:g}))",
                  "regime": str(cls)}
    return _report(plan, rows, {"levels": levels}, prediction, statistics, t0)


def run_second_order(plan: ExperimentPlan) -> ExperimentReport:
    """Full-index second-order statistic against its proven constant."""
    _require_kind(plan, ExperimentKind.MAX_SECOND_ORDER)
    fam, m = plan.config.family, plan.config.m
    cls = fam.classify()
    ok = (cls.regime is Regime.GUMBEL_RV and cls.tau <= 1) or cls.regime is Regime.GUMBEL_RAV
    if not ok:
        raise ParameterError(f"no second-order statement for {cls}")
    t0 = time.perf_counter()
    rows = _collect(plan)
    levels = _per_level(rows, ("cond_second", "second", "cond_ratio", "ratio"))
    preds = [_prediction_record(plan, n) for n in plan.sizes]
    target = preds[0]["second_order_constant"]
    statistics = {"target": target}
    for key in ("cond_second", "second"):
        med = [lv[key]["median"] for lv in levels if key in lv]
        if med:
            statistics[f"{key}_medians"] = med
            statistics[f"{key}_distance"] = [abs(x - target) for x in med]
    return _report(plan, rows, {"levels": levels}, {"levels": preds}, statistics, t0)


def run_concentration(plan: ExperimentPlan) -> ExperimentReport:
    """max_i |Z_n(i) - E_W Z_n(i)| / (m b_n log n) across sizes."""
    _require_kind(plan, ExperimentKind.CONCENTRATION)
    if not plan.config.family.classify().regime.gumbel:
        raise ParameterError("concentration scaling is defined for Gumbel-class weights")
    if plan.conditional_only:
        raise ParameterError("concentration needs grown graphs")
    t0 = time.perf_counter()
    rows = _collect(plan)
    levels = _per_level(rows, ("concentration", "max_gap"))
    med = [lv["concentration"]["median"] for lv in levels]
    statistics = {"medians": med,
                  "strictly_decreasing": bool(all(b < a for a, b in zip(med, med[1:])))}
    return _report(plan, rows, {"levels": levels}, {"limit": 0.0}, statistics, t0)


def zero_degree_exponent_bound(alpha) -> float:
    return min(2 - alpha, alpha - 1) / alpha


def run_zero_degree_fraction(plan: ExperimentPlan) -> ExperimentReport:
    """Fraction of vertices with no in-edges for infinite-mean Pareto
    weights; the decay exponent of ``1 - fraction`` is fitted on the ladder."""
    _require_kind(plan, ExperimentKind.ZERO_DEGREE)
    fam = plan.config.family
    if not (isinstance(fam, FrechetPareto) and 1 < fam.alpha < 2):
        raise ParameterError("zero-degree experiment needs Pareto weights with alpha in (1, 2)")
    if plan.conditional_only:
        raise ParameterError("zero-degree fractions need grown graphs")
    t0 = time.perf_counter()
    rows = _collect(plan)
    levels = _per_level(rows, ("zero_fraction",))
    sizes = [lv["n"] for lv in levels]
    nonzero = [1.0 - lv["zero_fraction"]["mean"] for lv in levels]
    statistics = {"nonzero_fraction": nonzero}
    if len(sizes) >= 2:
        statistics["fitted_exponent"] = -fit_power_exponent(sizes, nonzero)
    bound = zero_degree_exponent_bound(fam.alpha)
    prediction = {"exponent_bound": bound, "statement": "P(E_n) >= 1 - C n^(-bound + eps)"}
    return _report(plan, rows, {"levels": levels}, prediction, statistics, t0)


RUNNERS = {
    ExperimentKind.DEGREE_DIST: run_degree_dist,
    ExperimentKind.MAX_FIRST_ORDER: run_max_first_order,
    ExperimentKind.MAX_SECOND_ORDER: run_second_order,
    ExperimentKind.WINDOW_GUMBEL: run_window_gumbel,
    ExperimentKind.FRECHET_LIMIT: run_frechet_limit,
    ExperimentKind.CONCENTRATION: run_concentration,
    ExperimentKind.ZERO_DEGREE: run_zero_degree_fraction,
    ExperimentKind.LOCATION_SCALING: run_location_scaling,
}


def run(plan: ExperimentPlan) -> ExperimentReport:
    return RUNNERS[plan.kind](plan)
