"""Growth of weighted recursive graphs.

Vertex ``j+1`` arrives with ``m`` half-edges; each attaches independently to
an existing vertex ``i <= j`` with probability ``W_i / S_j``.  Only in-degrees
are kept.  All weights are drawn before growth starts (they are independent
of the graph), so target selection is a prefix search in a Fenwick tree
built once over the full weight vector: restricting the search threshold to
``u * S_j`` restricts the answer to the first ``j`` vertices.

Sampling convention (shared by every sampler here): the drawn index is the
smallest ``i`` with ``prefix(i) >= u * S`` for ``u`` uniform on [0, 1).
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
from numba import njit

from .config import family_from_config, family_to_config
from .errors import InvariantError, ParameterError, ResourceError
from .weightdist import Constant, WeightFamily

RANDOM_OUTDEGREE_CAP = 100_000
_CHUNK = 1 << 20


class Variant(str, enum.Enum):
    FIXED = "fixed"
    RANDOM = "random"


@dataclass(frozen=True)
class WrgConfig:
    n: int
    m: int = 1
    family: WeightFamily = field(default_factory=Constant)
    variant: Variant = Variant.FIXED
    seed: int = 0
    cap: int = RANDOM_OUTDEGREE_CAP

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ParameterError(f"n must be an integer >= 1, got {self.n}")
        if int(self.m) != self.m or self.m < 1:
            raise ParameterError(f"m must be an integer >= 1, got {self.m}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "variant", Variant(self.variant))
        if not 0 <= int(self.seed) < 2**64:
            raise ParameterError("seed must fit in an unsigned 64-bit integer")

    def to_config(self) -> dict[str, str]:
        out = {"n": str(self.n), "m": str(self.m), "variant": self.variant.value,
               "seed": str(int(self.seed)), "cap": str(self.cap)}
        out.update(family_to_config(self.family))
        return out

    @classmethod
    def from_config(cls, values: dict[str, str]) -> "WrgConfig":
        try:
            return cls(
                n=int(values["n"]),
                m=int(values.get("m", 1)),
                family=family_from_config(values),
                variant=values.get("variant", "fixed"),
                seed=int(values.get("seed", 0)),
                cap=int(values.get("cap", RANDOM_OUTDEGREE_CAP)),
            )
        except KeyError as exc:
            raise ParameterError(f"missing config key {exc}") from None
        except ValueError as exc:
            raise ParameterError(str(exc)) from None


# --------------------------------------------------------------------------
# Fenwick tree


@njit(cache=True)
def _prefix_one(tree, top, idx):
    acc = 0.0
    pos = 0
    step = top
    while step:
        if idx & step:
            pos += step
            acc += tree[pos]
        step >>= 1
    return acc


@njit(cache=True)
def _search_one(tree, n, top, t):
    pos = 0
    acc = 0.0
    step = top
    while step:
        nxt = pos + step
        if nxt <= n:
            cand = acc + tree[nxt]
            if cand < t:
                pos = nxt
                acc = cand
        step >>= 1
    return min(pos + 1, n)


@njit(cache=True)
def _prefix_many(tree, top, idx, out):
    for k in range(idx.size):
        out[k] = _prefix_one(tree, top, idx[k])


@njit(cache=True)
def _search_many(tree, n, top, t, out):
    for k in range(t.size):
        out[k] = _search_one(tree, n, top, t[k])


@njit(cache=True)
def _attach(tree, n, top, thresholds, caps, z):
    """Add one in-degree per threshold at its search result, clipped to the
    arriving vertex's ``cap``.  Callers pass thresholds in increasing order
    so successive descents share cache lines."""
    for k in range(thresholds.size):
        i = _search_one(tree, n, top, thresholds[k])
        if i > caps[k]:
            i = caps[k]
        z[i - 1] += 1


class FenwickSampler:
    """Binary indexed tree over nonnegative weights with prefix search.

    Node ``k`` (1-based) stores the sum of the weights in ``(k - lowbit(k), k]``.
    ``total`` is kept with compensated summation on append.  Prefix queries
    and searches add node values top-down, in the same order, so a prefix
    reported by :meth:`prefix` is exactly the value the search compares to.
    """

    def __init__(self, capacity: int):
        self.tree = np.zeros(capacity + 1)
        self.size = 0
        self._sum = 0.0
        self._comp = 0.0

    @classmethod
    def from_weights(cls, weights) -> "FenwickSampler":
        w = np.asarray(weights, dtype=float)
        if w.ndim != 1 or np.any(w < 0) or not np.all(np.isfinite(w)):
            raise ParameterError("weights must be a finite nonnegative vector")
        self = cls(len(w))
        n = len(w)
        tree = self.tree
        tree[1:] = w
        step = 1
        while step < n:
            child = np.arange(step, n + 1, 2 * step)
            parent = child + step
            ok = parent <= n
            tree[parent[ok]] += tree[child[ok]]
            step *= 2
        self.size = n
        self._sum = math.fsum(w)
        return self

    def append(self, weight: float):
        if not weight >= 0:
            raise ParameterError("weight must be nonnegative")
        if self.size + 1 >= len(self.tree):
            self.tree = np.concatenate([self.tree, np.zeros(len(self.tree))])
        k = self.size + 1
        value = float(weight)
        j = 1
        low = k & -k
        while j < low:
            value += self.tree[k - j]
            j <<= 1
        self.tree[k] = value
        self.size = k
        # Kahan
        y = float(weight) - self._comp
        t = self._sum + y
        self._comp = (t - self._sum) - y
        self._sum = t

    @property
    def total(self) -> float:
        return self._sum

    def _top(self):
        return 1 << (self.size.bit_length() - 1) if self.size else 0

    def prefix(self, idx):
        """Sum of the first ``idx`` weights (top-down order)."""
        idx = np.asarray(idx, dtype=np.int64)
        out = np.empty(idx.shape)
        _prefix_many(self.tree, self._top(), idx.ravel(), out.ravel())
        return out

    def search(self, thresholds):
        """Smallest 1-based ``i`` with ``prefix(i) >= t`` for each threshold
        (``size`` when no prefix reaches t)."""
        t = np.asarray(thresholds, dtype=float)
        out = np.empty(t.shape, dtype=np.int64)
        _search_many(self.tree, self.size, self._top(), t.ravel(), out.ravel())
        return out

    def sample(self, u):
        """Indices for uniforms ``u`` in [0, 1) under the shared convention."""
        return self.search(np.asarray(u, dtype=float) * self.total)


def linear_scan_indices(weights, thresholds) -> np.ndarray:
    """Naive inverse-CDF lookup: one pass over the weights, accumulating the
    prefix sum, against the thresholds visited in increasing order."""
    w = [float(x) for x in np.asarray(weights, dtype=float)]
    t = np.asarray(thresholds, dtype=float)
    out = np.empty(t.shape, dtype=np.int64)
    last = len(w) - 1
    i = 0
    acc = w[0]
    for q in np.argsort(t, kind="stable").tolist():
        target = t[q]
        while acc < target and i < last:
            i += 1
            acc += w[i]
        out[q] = i + 1
    return out


def compare_samplers(weights, u):
    """First draw where Fenwick and linear scan disagree, or None.

    Both samplers receive the same uniforms and the same total ``S``.
    """
    tree = FenwickSampler.from_weights(weights)
    thresholds = np.asarray(u, dtype=float) * tree.total
    fen = tree.search(thresholds)
    lin = linear_scan_indices(weights, thresholds)
    bad = np.flatnonzero(fen != lin)
    if bad.size == 0:
        return None
    k = int(bad[0])
    return {"draw": k, "u": float(np.asarray(u)[k]), "fenwick": int(fen[k]), "linear": int(lin[k])}


def sampler_oracle_check(weights, draws: int, rng) -> bool:
    """True when Fenwick and linear-scan samplers agree on ``draws`` uniforms."""
    w = np.asarray(weights, dtype=float)
    if w.size == 0 or np.any(w <= 0):
        raise ParameterError("sampler check needs positive weights")
    mismatch = compare_samplers(w, rng.random(draws))
    if mismatch is not None:
        import logging

        logging.getLogger(__name__).error("sampler mismatch: %s", mismatch)
        return False
    return True


# --------------------------------------------------------------------------
# snapshots


def prefix_and_harmonic(weights):
    """``S_j`` and ``H_j = sum_{l<j} 1/S_l`` (j = 1..n), accumulated in extended
    precision and rounded once."""
    w = np.asarray(weights, dtype=float)
    s_ext = np.cumsum(w, dtype=np.longdouble)
    h = np.zeros(len(w))
    if len(w) > 1:
        h[1:] = np.cumsum(1.0 / s_ext[:-1], dtype=np.longdouble).astype(float)
    return s_ext.astype(float), h


def conditional_means(weights, m: int = 1, *, harmonic=None):
    """``E_W[Z_n(i)] = m W_i sum_{j=i}^{n-1} 1/S_j`` for all i."""
    w = np.asarray(weights, dtype=float)
    if harmonic is None:
        _, harmonic = prefix_and_harmonic(w)
    return m * w * (harmonic[-1] - harmonic)


@dataclass(frozen=True, eq=False)
class GrowthSnapshot:
    in_degrees: np.ndarray
    weights: np.ndarray
    prefix_sums: np.ndarray
    harmonic_sums: np.ndarray
    n: int
    m: int
    seed: int
    variant: Variant = Variant.FIXED
    family: WeightFamily | None = None

    @classmethod
    def from_arrays(cls, in_degrees, weights, *, m, seed, variant=Variant.FIXED, family=None):
        weights = np.asarray(weights, dtype=float)
        s, h = prefix_and_harmonic(weights)
        return cls(np.asarray(in_degrees, dtype=np.int64), weights, s, h,
                   len(weights), m, int(seed), Variant(variant), family)

    @property
    def effective_m(self):
        return 1 if self.variant is Variant.RANDOM else self.m

    def cond_mean_degrees(self):
        return conditional_means(self.weights, self.effective_m, harmonic=self.harmonic_sums)

    def harmonic_residual(self):
        return harmonic_residual(self)

    def config(self) -> WrgConfig:
        return WrgConfig(self.n, self.m, self.family or Constant(), self.variant, self.seed)


def _check_fixed_degrees(z, n, m):
    total = int(z.sum())
    if total != m * (n - 1):
        raise InvariantError(f"degree sum {total} != m(n-1) = {m * (n - 1)}")
    if n and z[-1] != 0:
        raise InvariantError("the newest vertex has positive in-degree")


def grow(config: WrgConfig, rng=None) -> GrowthSnapshot:
    """Grow a WRG to ``config.n`` vertices.

    Deterministic given ``(config, seed)``: the stream is consumed as
    ``n`` weight uniforms followed by ``m`` uniforms per arriving vertex.
    """
    if config.variant is Variant.RANDOM:
        return grow_random_outdegree(config, rng)
    rng = np.random.default_rng(config.seed) if rng is None else rng
    n, m = config.n, config.m
    weights = np.atleast_1d(config.family.sample(rng, n)).astype(float)
    if not np.all(weights > 0):
        raise InvariantError("sampled a nonpositive weight")
    z = np.zeros(n, dtype=np.int64)
    if n > 1:
        tree = FenwickSampler.from_weights(weights)
        top = tree._top()
        rows = max(1, _CHUNK // m)
        for start in range(1, n, rows):
            j = np.arange(start, min(n, start + rows), dtype=np.int64)
            s_j = tree.prefix(j)
            thresholds = (rng.random((len(j), m)) * s_j[:, None]).ravel()
            order = np.argsort(thresholds)
            _attach(tree.tree, n, top, thresholds[order], np.repeat(j, m)[order], z)
    _check_fixed_degrees(z, n, m)
    return GrowthSnapshot.from_arrays(z, weights, m=m, seed=config.seed,
                                      variant=Variant.FIXED, family=config.family)


def grow_random_outdegree(config: WrgConfig, rng=None) -> GrowthSnapshot:
    """Variant where vertex ``j+1`` links to every ``i <= j`` independently
    with probability ``W_i / S_j``; Theta(n^2) work."""
    if config.n > config.cap:
        raise ResourceError(f"random out-degree growth capped at n={config.cap}; got n={config.n}")
    rng = np.random.default_rng(config.seed) if rng is None else rng
    n = config.n
    weights = np.atleast_1d(config.family.sample(rng, n)).astype(float)
    s, _ = prefix_and_harmonic(weights)
    z = np.zeros(n, dtype=np.int64)
    for j in range(1, n):
        z[:j] += rng.random(j) < weights[:j] / s[j - 1]
    return GrowthSnapshot.from_arrays(z, weights, m=config.m, seed=config.seed,
                                      variant=Variant.RANDOM, family=config.family)


def cond_mean_degrees(snapshot: GrowthSnapshot) -> np.ndarray:
    return snapshot.cond_mean_degrees()


def max_degree_stats(values):
    """``(max, smallest 1-based index attaining it)``."""
    v = np.asarray(values)
    if v.size == 0:
        raise ParameterError("max_degree_stats needs a nonempty vector")
    k = int(np.argmax(v))
    return v[k].item(), k + 1


def harmonic_residual(snapshot: GrowthSnapshot) -> float:
    """``Y_n = sum_{j=1}^{n-1} 1/S_j - log n``."""
    if snapshot.n < 2:
        raise ParameterError("harmonic residual needs n >= 2")
    return float(snapshot.harmonic_sums[-1] - math.log(snapshot.n))


# --------------------------------------------------------------------------
# export


def write_snapshot(snapshot: GrowthSnapshot, out_dir, stem: str = "snapshot"):
    """Write ``<stem>.csv`` (i,weight,in_degree,cond_mean) and ``<stem>.json``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    cm = snapshot.cond_mean_degrees()
    csv_path = out_dir / f"{stem}.csv"
    with open(csv_path, "w", encoding="utf-8") as fh:
        fh.write("i,weight,in_degree,cond_mean\n")
        for i, (w, z, c) in enumerate(zip(snapshot.weights, snapshot.in_degrees, cm), 1):
            fh.write(f"{i},{w:.17g},{z},{c:.17g}\n")
    header = {
        "format": "wrg-snapshot/1",
        "config": snapshot.config().to_config(),
        "n": snapshot.n,
        "m": snapshot.m,
        "seed": snapshot.seed,
        "variant": snapshot.variant.value,
        "degree_sum": int(snapshot.in_degrees.sum()),
        "harmonic_residual": harmonic_residual(snapshot) if snapshot.n > 1 else None,
    }
    json_path = out_dir / f"{stem}.json"
    json_path.write_text(json.dumps(header, indent=2), encoding="utf-8")
    return csv_path, json_path


def read_snapshot(csv_path) -> GrowthSnapshot:
    csv_path = Path(csv_path)
    header = json.loads(csv_path.with_suffix(".json").read_text(encoding="utf-8"))
    data = np.loadtxt(csv_path, delimiter=",", skiprows=1, ndmin=2,
                      dtype=[("i", np.int64), ("w", float), ("z", np.int64), ("c", float)])
    config = WrgConfig.from_config(header["config"])
    return GrowthSnapshot.from_arrays(
        data["z"].ravel(), data["w"].ravel(), m=header["m"], seed=header["seed"],
        variant=header["variant"], family=config.family,
    )
