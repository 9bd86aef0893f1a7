"""Limiting degree law and maximum-degree predictions.

The limiting fraction of vertices with in-degree k is

    p(k) = int  mu_bar/(mu_bar + x) * (x/(mu_bar + x))^k  mu(dx),   mu_bar = E[W]/m,

which is invariant under rescaling of W.  It is evaluated by adaptive
quadrature of the absolutely continuous part (integrand assembled in log
space) plus a finite sum over atoms.

Maximum-degree predictions are computed from the mean-one version of the
weight law, since the normalizing sequences are stated for E[W] = 1.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import special

from .errors import ParameterError
from .weightdist import (
    BoundedGumbelRV,
    BoundedTransform,
    BoundedWeibull,
    Regime,
    WeightFamily,
    quad,
)

PK_EPSABS = 1e-13
CONJECTURE = "CONJECTURE"


def theta_m(family: WeightFamily, m: int = 1) -> float:
    """``1 + E[W]/m`` with W measured in units of its essential supremum."""
    _check_m(m)
    return family.theta(m)


def gamma_exponent(tau: float) -> float:
    if not tau > 0:
        raise ParameterError(f"tau must be > 0, got {tau}")
    return 1.0 / (tau + 1.0)


def _check_m(m):
    if int(m) != m or m < 1:
        raise ParameterError(f"m must be a positive integer, got {m}")


def _mu_bar(family, m):
    _check_m(m)
    mean = family.mean()
    if not math.isfinite(mean):
        raise ParameterError("the limiting degree law needs a finite mean weight")
    return mean / m


def _log_kernel(x, mu_bar, k):
    """log of mu_bar/(mu_bar+x) * (x/(mu_bar+x))^k, elementwise."""
    x = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        out = math.log(mu_bar) - (k + 1) * np.log(mu_bar + x)
        if k:
            out = out + k * np.log(x)
    return out


def _breakpoints(family, mu_bar, k, lo, hi):
    """Interior points for the adaptive quadrature: the kernel mode, a
    geometric grid around it, and a few weight quantiles."""
    pts = set()
    mode = mu_bar * max(k, 1)
    for j in range(-12, 13):
        pts.add(mode * 2.0**j)
    for p in (0.9, 0.5, 0.1, 1e-2, 1e-4, 1e-6, 1e-9):
        pts.add(float(family.inverse_tail(p)))
    inner = sorted(x for x in pts if lo < x < hi and math.isfinite(x))
    return [lo, *inner, hi]


def _integrate(family, mu_bar, k, lo, hi):
    s_lo, s_hi = family.support()
    lo, hi = max(lo, s_lo), min(hi, s_hi)
    if not hi > lo:
        return 0.0

    def body(x):
        d = float(family.density(x))
        if d <= 0.0:
            return 0.0
        return math.exp(float(_log_kernel(x, mu_bar, k)) + math.log(d))

    return quad(body, _breakpoints(family, mu_bar, k, lo, hi),
                epsabs=PK_EPSABS, epsrel=1e-10, what=f"p({k})")


def _atom_part(family, mu_bar, k, lo=-math.inf, hi=math.inf):
    total = 0.0
    for loc, mass in family.atoms():
        if lo < loc <= hi:
            total += mass * math.exp(float(_log_kernel(loc, mu_bar, k)))
    return total


def _check_k(k):
    if int(k) != k or k < 0:
        raise ParameterError(f"k must be a nonnegative integer, got {k}")
    return int(k)


def pk_limit(family: WeightFamily, m: int, k: int) -> float:
    """Limiting fraction of vertices with in-degree ``k``."""
    k = _check_k(k)
    mu_bar = _mu_bar(family, m)
    return _atom_part(family, mu_bar, k) + _integrate(family, mu_bar, k, -math.inf, math.inf)


def pk_table(family: WeightFamily, m: int, kmax: int) -> np.ndarray:
    return np.array([pk_limit(family, m, k) for k in range(kmax + 1)])


def pk_integrand(family: WeightFamily, m: int, k: int, x):
    """The kernel evaluated at weights ``x`` (its mean over W draws is p(k))."""
    return np.exp(_log_kernel(x, _mu_bar(family, m), _check_k(k)))


def gamma_k_mass(family: WeightFamily, m: int, k: int, interval) -> float:
    """Limiting mass ``Gamma^(k)((f, f'])``: the share of vertices with
    in-degree k whose weight lies in the half-open interval."""
    k = _check_k(k)
    f, f2 = map(float, interval)
    if not f < f2:
        return 0.0
    mu_bar = _mu_bar(family, m)
    return _atom_part(family, mu_bar, k, f, f2) + _integrate(family, mu_bar, k, f, f2)


def gamma_mass(family: WeightFamily, m: int, interval) -> float:
    """``Gamma((f, f'])`` with ``Gamma(dx) = (x m / E W) mu(dx)``: the limiting
    in-degree per vertex carried by weights in the interval."""
    f, f2 = map(float, interval)
    if not f < f2:
        return 0.0
    mu_bar = _mu_bar(family, m)
    total = sum(loc / mu_bar * mass for loc, mass in family.atoms() if f < loc <= f2)
    s_lo, s_hi = family.support()
    lo, hi = max(f, s_lo), min(f2, s_hi)
    if hi > lo:
        edges = [lo, hi] if math.isfinite(hi) else [lo, max(lo, 0.0) + mu_bar, math.inf]
        total += quad(lambda x: x / mu_bar * float(family.density(x)), edges,
                      epsabs=PK_EPSABS, what="Gamma mass")
    return total


def mu_mass(family: WeightFamily, interval) -> float:
    """``P(f < W <= f')``."""
    f, f2 = map(float, interval)
    if not f < f2:
        return 0.0
    below = lambda x: 1.0 - family.tail_prob(x) + sum(p for loc, p in family.atoms() if loc == x)
    upper = 1.0 if f2 == math.inf else below(f2)
    return upper - (0.0 if f == -math.inf else below(f))


# --------------------------------------------------------------------------
# large-k asymptotics


@dataclass(frozen=True)
class AsymptoticForm:
    """Leading-order evaluation of p(k) for large k.

    ``value`` is the leading form.  When the branch only pins p(k) up to a
    slowly varying factor, ``lower``/``upper`` form a non-sharp envelope
    (a factor e either side) and ``sharp`` is False.
    """

    value: float
    lower: float
    upper: float
    form: str
    sharp: bool


def _point(value, form):
    return AsymptoticForm(value, value, value, form, True)


def _envelope(value, form):
    return AsymptoticForm(value, value / math.e, value * math.e, form, False)


def _bounded_inputs(family):
    """(inner law, x0 of the transform) for reciprocal-shift families."""
    if isinstance(family, BoundedTransform):
        return family.inner, family.x0_raw
    if isinstance(family, (BoundedWeibull, BoundedGumbelRV)):
        return family._inner, family._x0
    return None, None


def pk_asymptotic(family: WeightFamily, m: int, k: int) -> AsymptoticForm:
    k = _check_k(k)
    _check_m(m)
    cls = family.classify()
    reg = cls.regime
    mean = family.mean()
    if not math.isfinite(mean):
        raise ParameterError("p(k) asymptotics need a finite mean weight")
    if reg.bounded:
        th = family.theta(m)
        if k <= m / (mean / family.x0):
            raise ParameterError(f"bounded asymptotics need k > m/E[W] = {m * family.x0 / mean:g}")
        geo = -k * math.log(th)
        if reg is Regime.BOUNDED_ATOM:
            return _point(cls.q0 * (1 - 1 / th) * math.exp(geo), "atom")
        inner, x0 = _bounded_inputs(family)
        if reg is Regime.BOUNDED_WEIBULL:
            al = cls.alpha
            const = special.gamma(al) * (1 - 1 / th) ** (2 - al)
            if inner is not None:
                const *= (inner.x_min * x0) ** (al - 1)
            return _envelope(const * k ** (-(al - 1)) * math.exp(geo), "bounded-weibull")
        tau, c1 = cls.tau, cls.c1
        if cls.sub == "RV":
            c1_eff = c1 * (x0 if x0 is not None else 1.0)
            g = gamma_exponent(tau)
            expo = -(tau**g / (1 - g)) * ((1 - 1 / th) * k / c1_eff) ** (1 - g)
            return _point(math.exp(expo + geo), "bounded-gumbel-rv")
        lk = math.log(k)
        K = tau * math.log(math.e * c1**tau * (1 - 1 / th) / tau)
        expo = -(lk / c1) ** tau * (1 - tau * (tau - 1) * math.log(lk) / lk + K / lk)
        return _point(math.exp(expo + geo), "bounded-gumbel-rav")
    # unbounded laws: constants refer to the mean-one version
    raw_mean = family.raw_mean
    x = raw_mean * k / m
    if reg is Regime.GUMBEL_RV:
        tau, c1 = cls.tau, cls.c1
        g = gamma_exponent(tau)
        return _point(math.exp(-(tau**g / (1 - g)) * (x / c1) ** (1 - g)), "gumbel-rv")
    if reg is Regime.GUMBEL_RAV:
        tau, c1 = cls.tau, cls.c1
        if not x > math.e:
            raise ParameterError("rapidly varying asymptotics need E[W] k/m > e")
        lx = math.log(x)
        K = tau * math.log(math.e * c1**tau / tau)
        expo = -(lx / c1) ** tau * (1 - tau * (tau - 1) * math.log(lx) / lx + K / lx)
        return _point(math.exp(expo) / k, "gumbel-rav")
    if reg is Regime.FRECHET:
        al = cls.alpha
        if not al > 2:
            raise ParameterError("p(k) asymptotics need alpha > 2 (finite mean)")
        if k < 1:
            raise ParameterError("power-law asymptotics need k >= 1")
        x_min = family.support()[0]
        mu_bar = mean / m
        const = (al - 1) * x_min ** (al - 1) * mu_bar ** (1 - al) * special.gamma(al)
        return _envelope(const * k ** (-al), "frechet")
    raise ParameterError(f"no large-k branch for regime {reg.value}")


# --------------------------------------------------------------------------
# maximum degree


@dataclass(frozen=True)
class MaxDegreePrediction:
    """First (and where proven, second) order of the maximum in-degree.

    ``first_order`` is the deterministic scale the maximum is divided by.
    ``second_order_addend`` is ``second_order_constant * second_order_scale``,
    the predicted correction to add to ``first_order``.  ``limit_scale`` is
    the scale parameter of the Frechet limit (alpha > 2).
    """

    first_order: float
    second_order_addend: float | None
    regime: str
    scale_is_random: bool
    second_order_constant: float | None = None
    second_order_scale: float | None = None
    limit_scale: float | None = None
    limit: str = "1"

    def to_dict(self):
        return asdict(self)


def _log_n(n, log_n):
    if log_n is None:
        if n is None or not n >= 3:
            raise ParameterError(f"max-degree prediction needs n >= 3, got {n}")
        return math.log(n)
    if not log_n >= math.log(3):
        raise ParameterError("max-degree prediction needs n >= 3")
    return float(log_n)


def max_degree_prediction(family: WeightFamily, m: int = 1, n=None, *, log_n=None) -> MaxDegreePrediction:
    _check_m(m)
    L = _log_n(n, log_n)
    cls = family.classify()
    reg = cls.regime
    tag = str(cls)
    fam = family.with_mean_one()
    if reg.bounded:
        return MaxDegreePrediction(L / math.log(family.theta(m)), None, tag, False)
    if reg is Regime.GUMBEL_SV:
        b = fam.norm_seqs(None, m, log_n=L).b_n
        return MaxDegreePrediction(m * b * L, None, tag, False)
    if reg is Regime.GUMBEL_RV:
        g = gamma_exponent(cls.tau)
        seq = fam.norm_seqs(None, m, log_n=g * L)
        first = m * (1 - g) * seq.b_n * L
        if cls.tau <= 1:
            scale = m * (1 - g) * seq.a_n * L * math.log(L)
            return MaxDegreePrediction(first, 0.5 * scale, tag, False, 0.5, scale)
        return MaxDegreePrediction(first, None, tag, False)
    if reg is Regime.GUMBEL_RAV:
        tau, c1 = cls.tau, cls.c1
        b_n = fam.norm_seqs(None, m, log_n=L).b_n
        log_inv_t = tau * L / math.log(b_n)
        if not L - log_inv_t > 0:
            raise ParameterError("t_n n < 1 at this n; RaV prediction undefined")
        seq = fam.norm_seqs(None, m, log_n=L - log_inv_t)
        first = m * seq.b_n * log_inv_t
        if tau <= 3:
            const = 0.5 * (1 - 1 / tau)
            scale = m * seq.a_n * log_inv_t * math.log(L)
        else:
            const = -tau * (tau - 1) ** 2 / (2 * c1**3)
            scale = m * seq.a_n * log_inv_t * L ** (1 - 3 / tau)
        return MaxDegreePrediction(first, const * scale, tag, False, const, scale)
    if reg is Regime.FRECHET:
        al = cls.alpha
        if al > 2:
            u_n = fam.norm_seqs(None, m, log_n=L).u_n
            lim = float(m * special.gamma(al) ** (1 / (al - 1)))
            return MaxDegreePrediction(u_n, None, tag, True, limit_scale=lim,
                                       limit=f"Frechet(shape={al - 1:g}, scale={lim:g})")
        if al < 2:
            return MaxDegreePrediction(math.exp(L), None, tag, True, limit="Z functional")
        raise ParameterError("alpha = 2 is not covered by the max-degree limit theorems")
    raise ParameterError(f"no prediction for regime {reg.value}")  # pragma: no cover


@dataclass(frozen=True)
class LocationPrediction:
    """Limit of ``log I_n / log n`` (``exponent``) and, when the location is
    linear in n, the law of ``I_n / n``."""

    exponent: float
    tag: str = "THEOREM"
    law: str | None = None


def location_prediction(family: WeightFamily, m: int = 1) -> LocationPrediction:
    cls = family.classify()
    reg = cls.regime
    if reg.bounded:
        th = family.theta(m)
        return LocationPrediction(1 - (th - 1) / (th * math.log(th)), CONJECTURE)
    if reg is Regime.GUMBEL_SV:
        return LocationPrediction(0.0)
    if reg is Regime.GUMBEL_RV:
        return LocationPrediction(gamma_exponent(cls.tau))
    if reg is Regime.GUMBEL_RAV:
        return LocationPrediction(1.0)
    if cls.alpha > 2:
        return LocationPrediction(1.0, law=f"I_alpha(alpha={cls.alpha:g})")
    if cls.alpha < 2:
        return LocationPrediction(1.0, law="I (no closed form)")
    raise ParameterError("alpha = 2 is not covered by the location limit theorems")

