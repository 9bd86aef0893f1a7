"""Vertex-weight laws.

Every family is a frozen dataclass describing a law on (0, inf).  Concrete
classes implement the *raw* law through a handful of hooks (`_survival`,
`_density`, `_atoms`, `_quantile`, `_support`, `_raw_mean`); the public
methods apply the optional mean normalization ``W -> W / E[W_raw]``.

Conventions
-----------
* ``tail_prob(x)`` is ``P(W >= x)``.
* Sampling is inversion of the survival function: ``W = S^{-1}(U)`` with
  ``U`` uniform on the open unit interval, so a uniform stream maps to
  weights deterministically (``from_uniform``).
* Unbounded families use the exact parametric tail forms; the slowly varying
  factor of the Frechet class is fixed to 1 (pure Pareto).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import ClassVar

import numpy as np
from scipy import integrate, optimize, special

from .errors import NumericError, ParameterError

_TINY_U = 2.0**-54


def open_uniform(rng, size=None):
    """Uniforms on (0, 1); numpy's generator can return exactly 0."""
    u = rng.random(size)
    if size is None:
        return u if u > 0.0 else _TINY_U
    return np.where(u == 0.0, _TINY_U, u)


def quad(func, edges, *, epsabs=1e-13, epsrel=1e-11, limit=500, what="integral"):
    """Sum of adaptive quadratures over consecutive ``edges`` (last may be inf).

    Raises NumericError when any piece reports a failure whose error
    estimate is not negligible.
    """
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        if not hi > lo:
            continue
        val, err, info, *rest = integrate.quad(
            func, lo, hi, epsabs=epsabs, epsrel=epsrel, limit=limit, full_output=1
        )
        ier = info if isinstance(info, int) else 0
        if rest and isinstance(rest[0], str):
            ier = 1
        if not np.isfinite(val) or (ier and err > max(epsabs, epsrel * abs(val)) * 1e3):
            raise NumericError(
                f"quadrature for {what} did not converge",
                interval=(lo, hi), value=val, abserr=err,
            )
        total += val
    return total


class Regime(enum.Enum):
    BOUNDED_WEIBULL = "Bounded-Weibull"
    BOUNDED_GUMBEL = "Bounded-Gumbel"
    BOUNDED_ATOM = "Bounded-Atom"
    GUMBEL_SV = "Gumbel-SV"
    GUMBEL_RV = "Gumbel-RV"
    GUMBEL_RAV = "Gumbel-RaV"
    FRECHET = "Frechet"

    @property
    def bounded(self):
        return self.name.startswith("BOUNDED")

    @property
    def gumbel(self):
        return self.name.startswith("GUMBEL")


@dataclass(frozen=True)
class Classification:
    regime: Regime
    alpha: float | None = None
    q0: float | None = None
    tau: float | None = None
    c1: float | None = None
    sub: str | None = None  # "RV" / "RaV" for bounded-Gumbel

    def __str__(self):
        extras = {
            k: v for k, v in
            (("alpha", self.alpha), ("q0", self.q0), ("tau", self.tau), ("sub", self.sub))
            if v is not None
        }
        if not extras:
            return self.regime.value
        inner = ", ".join(f"{k}={v:g}" if isinstance(v, float) else f"{k}={v}"
                          for k, v in extras.items())
        return f"{self.regime.value}({inner})"


@dataclass(frozen=True)
class NormalizingSequences:
    n: float
    m: int
    a_n: float | None = None
    b_n: float | None = None
    u_n: float | None = None
    t_n: float | None = None
    gamma: float | None = None
    theta_m: float | None = None


# --------------------------------------------------------------------------
# shared tail shape  a x^b exp(-(x/c1)^tau)


@dataclass(frozen=True)
class RVTail:
    """Law of a variable X with ``P(X >= x) = min(1, a x^b exp(-(x/c1)^tau))``.

    The survival is 1 below the support edge ``lo``.  For ``b > 0`` the form is
    not monotone; when its peak stays below 1 the leftover mass sits as an
    atom at the peak.  ``b == 0`` with ``a < 1`` would put an atom at 0 and is
    rejected.
    """

    tau: float
    c1: float = 1.0
    a: float = 1.0
    b: float = 0.0

    def __post_init__(self):
        if not (self.tau > 0 and self.c1 > 0 and self.a > 0 and math.isfinite(self.b)):
            raise ParameterError(
                f"tail parameters need tau>0, c1>0, a>0, finite b; got "
                f"tau={self.tau}, c1={self.c1}, a={self.a}, b={self.b}"
            )
        if self.b == 0 and self.a < 1:
            raise ParameterError("b=0 requires a>=1 (otherwise W=0 with positive probability)")

    @property
    def c2(self):
        return self.c1 / self.tau

    def log_form(self, x):
        x = np.asarray(x, dtype=float)
        power = (x / self.c1) ** self.tau
        if self.b == 0:
            return math.log(self.a) - power
        with np.errstate(divide="ignore", invalid="ignore"):
            out = math.log(self.a) + self.b * np.log(x) - power
        return np.where(np.isinf(x), -np.inf, out)

    def _bracket_above(self, start, level=0.0):
        hi = max(start, self.c1, 1.0)
        while self.log_form(hi) > level:
            hi *= 2.0
        return hi

    @cached_property
    def _edge(self):
        tau, c1, a, b = self.tau, self.c1, self.a, self.b
        f = lambda x: float(self.log_form(x))
        if b > 0:
            # a tiny b can push the peak below the smallest normal float
            peak = max(c1 * (b / tau) ** (1.0 / tau), np.finfo(float).tiny)
            top = f(peak)
            if top <= 0.0:
                return peak, -math.expm1(top)
            hi = self._bracket_above(2.0 * peak)
            return optimize.brentq(f, peak, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps), 0.0
        if b == 0:
            return c1 * math.log(a) ** (1.0 / tau), 0.0
        lo = c1
        while f(lo) <= 0.0:
            lo /= 2.0
        hi = self._bracket_above(lo)
        return optimize.brentq(f, lo, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps), 0.0

    @property
    def lo(self):
        return self._edge[0]

    @property
    def atom_mass(self):
        return self._edge[1]

    def survival(self, x):
        x = np.asarray(x, dtype=float)
        out = np.ones_like(x)
        above = x > self.lo
        if np.any(above):
            out[above] = np.minimum(1.0, np.exp(self.log_form(x[above])))
        return out

    def density(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        above = x > self.lo
        if np.any(above):
            xa = x[above]
            hazard = self.tau * xa ** (self.tau - 1.0) / self.c1**self.tau - self.b / xa
            out[above] = np.exp(self.log_form(xa)) * hazard
        return out

    def quantile(self, u):
        """Generalized inverse of the survival: ``sup{x : S(x) >= u}``."""
        u = np.asarray(u, dtype=float)
        if self.b == 0:
            return self.c1 * (math.log(self.a) - np.log(u)) ** (1.0 / self.tau)
        out = np.full_like(u, self.lo)
        solve = u < 1.0 - self.atom_mass
        if not np.any(solve):
            return out
        target = np.log(u[solve])
        lo = np.full_like(target, self.lo)
        hi = np.full_like(target, max(2.0 * self.lo, self.c1, 1.0))
        grow = self.log_form(hi) > target
        while np.any(grow):
            hi[grow] *= 2.0
            grow = self.log_form(hi) > target
        for _ in range(400):
            mid = 0.5 * (lo + hi)
            right = self.log_form(mid) > target
            lo = np.where(right, mid, lo)
            hi = np.where(right, hi, mid)
            if np.all(hi - lo <= 1e-13 * hi):
                break
        else:  # pragma: no cover - bisection always terminates well before
            raise NumericError("tail inversion did not converge")
        out[solve] = 0.5 * (lo + hi)
        return out

    def mean(self):
        if self.a == 1.0 and self.b == 0.0:
            return self.c1 * special.gamma(1.0 + 1.0 / self.tau)
        lo = self.lo
        body = lambda x: math.exp(float(self.log_form(x)))
        return lo + quad(body, [lo, lo + self.c1, math.inf], what="RV-tail mean")

    def seqs(self, log_n):
        """Extreme-value scaling ``a_n`` and centering ``b_n`` at ``log n``."""
        L = log_n
        if not L > 0:
            raise ParameterError("need n > 1 for the Gumbel normalizing sequences")
        a_n = self.c2 * L ** (1.0 / self.tau - 1.0)
        corr = (self.b / self.tau) * math.log(L) + self.b * math.log(self.c1) + math.log(self.a)
        return a_n, self.c1 * L ** (1.0 / self.tau) + a_n * corr


# --------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class WeightFamily:
    """Base class; see module docstring for the hook contract."""

    normalize_mean: bool = field(default=False, kw_only=True)

    key: ClassVar[str] = ""

    # -- raw hooks -------------------------------------------------------
    def _survival(self, x):
        raise NotImplementedError

    def _density(self, x):
        return np.zeros_like(np.asarray(x, dtype=float))

    def _atoms(self):
        return ()

    def _quantile(self, u):
        raise NotImplementedError

    def _support(self):
        raise NotImplementedError

    def _raw_mean(self):
        lo, hi = self._support()
        body = lambda x: float(self._survival(x))
        edges = [lo, hi] if math.isfinite(hi) else [lo, lo + 1.0, math.inf]
        return lo + quad(body, edges, what=f"mean of {self.key}")

    def _raw_seqs(self, log_n):
        return {}

    def classify(self) -> Classification:
        raise NotImplementedError

    # -- scale -----------------------------------------------------------
    @cached_property
    def raw_mean(self):
        return float(self._raw_mean())

    @property
    def scale(self):
        """Multiplier applied to raw draws (``1/E[W_raw]`` when normalizing)."""
        if self.normalize_mean and math.isfinite(self.raw_mean):
            return 1.0 / self.raw_mean
        return 1.0

    def with_mean_one(self):
        if math.isfinite(self.raw_mean):
            return replace(self, normalize_mean=True)
        return self

    # -- public ----------------------------------------------------------
    def mean(self):
        m = self.raw_mean
        return 1.0 if (self.normalize_mean and math.isfinite(m)) else m

    def support(self):
        lo, hi = self._support()
        return lo * self.scale, hi * self.scale

    @property
    def x0(self):
        """Essential supremum (inf for unbounded families)."""
        return self.support()[1]

    def tail_prob(self, x):
        x = np.asarray(x, dtype=float)
        out = np.clip(self._survival(x / self.scale), 0.0, 1.0)
        return float(out) if out.ndim == 0 else out

    def density(self, x):
        """Density of the absolutely continuous part."""
        s = self.scale
        out = np.asarray(self._density(np.asarray(x, dtype=float) / s)) / s
        return float(out) if out.ndim == 0 else out

    def atoms(self):
        s = self.scale
        return tuple((loc * s, mass) for loc, mass in self._atoms() if mass > 0)

    def from_uniform(self, u):
        out = np.asarray(self._quantile(np.asarray(u, dtype=float)), dtype=float)
        if self.scale != 1.0:
            out = out * self.scale
        return float(out) if out.ndim == 0 else out

    def sample(self, rng, size=None):
        return self.from_uniform(open_uniform(rng, size))

    def inverse_tail(self, p):
        """``sup{t : P(W >= t) >= p}`` for p in (0, 1]."""
        return self.from_uniform(p)

    def theta(self, m):
        """``1 + E[W]/m``, with E[W] measured in units of x0 for bounded laws."""
        mean = self.mean()
        if not math.isfinite(mean):
            raise ParameterError("theta_m needs a finite mean")
        if math.isfinite(self.x0):
            mean = mean / self.x0
        return 1.0 + mean / m

    def norm_seqs(self, n, m=1, *, log_n=None):
        if log_n is None:
            if not n >= 2:
                raise ParameterError(f"normalizing sequences need n >= 2, got {n}")
            log_n = math.log(n)
        elif not log_n >= math.log(2):
            raise ParameterError("normalizing sequences need n >= 2")
        cls = self.classify()
        s = self.scale
        raw = self._raw_seqs(log_n)
        a_n = raw.get("a_n")
        b_n = raw.get("b_n")
        u_n = raw.get("u_n")
        a_n = None if a_n is None else a_n * s
        b_n = None if b_n is None else b_n * s
        u_n = None if u_n is None else u_n * s
        t_n = None
        if cls.regime is Regime.GUMBEL_RAV:
            if not b_n > 1.0:
                raise ParameterError("t_n undefined: b_n <= 1 at this n")
            t_n = math.exp(-cls.tau * log_n / math.log(b_n))
        gamma = None
        if cls.regime is Regime.GUMBEL_RV or (cls.regime is Regime.BOUNDED_GUMBEL and cls.sub == "RV"):
            gamma = 1.0 / (cls.tau + 1.0)
        theta = self.theta(m) if math.isfinite(self.mean()) else None
        return NormalizingSequences(
            n=n if n is not None else math.exp(min(log_n, 700.0)), m=m,
            a_n=a_n, b_n=b_n, u_n=u_n, t_n=t_n, gamma=gamma, theta_m=theta,
        )


@dataclass(frozen=True)
class Constant(WeightFamily):
    c: float = 1.0
    key: ClassVar[str] = "constant"

    def __post_init__(self):
        if not self.c > 0:
            raise ParameterError(f"constant weight must be > 0, got {self.c}")

    def _survival(self, x):
        return np.where(np.asarray(x) <= self.c, 1.0, 0.0)

    def _atoms(self):
        return ((self.c, 1.0),)

    def _quantile(self, u):
        return np.full_like(np.asarray(u, dtype=float), self.c)

    def _support(self):
        return self.c, self.c

    def _raw_mean(self):
        return self.c

    def classify(self):
        return Classification(Regime.BOUNDED_ATOM, q0=1.0)


@dataclass(frozen=True)
class Atom(WeightFamily):
    """Mass ``q0`` at x0 = 1, the rest uniform on (0, s)."""

    q0: float = 0.5
    s: float = 0.5
    key: ClassVar[str] = "atom"

    def __post_init__(self):
        if not (0 < self.q0 <= 1 and 0 < self.s < 1):
            raise ParameterError(f"atom needs q0 in (0,1], s in (0,1); got {self.q0}, {self.s}")

    def _survival(self, x):
        x = np.asarray(x, dtype=float)
        q0, s = self.q0, self.s
        body = q0 + (1.0 - q0) * (s - x) / s
        return np.where(x <= 0, 1.0, np.where(x <= s, body, np.where(x <= 1.0, q0, 0.0)))

    def _density(self, x):
        x = np.asarray(x, dtype=float)
        return np.where((x > 0) & (x < self.s), (1.0 - self.q0) / self.s, 0.0)

    def _atoms(self):
        return ((1.0, self.q0),)

    def _quantile(self, u):
        u = np.asarray(u, dtype=float)
        if self.q0 == 1.0:
            return np.ones_like(u)
        return np.where(u <= self.q0, 1.0, self.s * (1.0 - u) / (1.0 - self.q0))

    def _support(self):
        return (0.0 if self.q0 < 1 else 1.0), 1.0

    def _raw_mean(self):
        return self.q0 + (1.0 - self.q0) * self.s / 2.0

    def classify(self):
        return Classification(Regime.BOUNDED_ATOM, q0=self.q0)


@dataclass(frozen=True)
class _RVBacked(WeightFamily):
    tau: float = 1.0
    c1: float = 1.0
    a: float = 1.0
    b: float = 0.0

    @cached_property
    def shape(self):
        return RVTail(self.tau, self.c1, self.a, self.b)

    def __post_init__(self):
        self.shape  # validates


@dataclass(frozen=True)
class GumbelRV(_RVBacked):
    """``P(W >= x) = a x^b exp(-(x/c1)^tau)`` (Weibull-type tail)."""

    key: ClassVar[str] = "gumbel_rv"

    def _survival(self, x):
        return self.shape.survival(x)

    def _density(self, x):
        return self.shape.density(x)

    def _atoms(self):
        return ((self.shape.lo, self.shape.atom_mass),)

    def _quantile(self, u):
        return self.shape.quantile(u)

    def _support(self):
        return self.shape.lo, math.inf

    def _raw_mean(self):
        return self.shape.mean()

    def _raw_seqs(self, log_n):
        a_n, b_n = self.shape.seqs(log_n)
        return {"a_n": a_n, "b_n": b_n}

    def classify(self):
        return Classification(Regime.GUMBEL_RV, tau=self.tau, c1=self.c1)


@dataclass(frozen=True)
class GumbelRaV(_RVBacked):
    """``W = exp(Y)`` with Y an RV-tail variable, so
    ``P(W >= x) = a (log x)^b exp(-(log x / c1)^tau)``; needs tau > 1."""

    key: ClassVar[str] = "gumbel_rav"

    def __post_init__(self):
        super().__post_init__()
        if not self.tau > 1:
            raise ParameterError(f"rapidly varying case needs tau > 1, got {self.tau}")

    def _survival(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            return self.shape.survival(np.log(np.maximum(x, 0.0)))

    def _density(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        pos = x > 0
        out[pos] = self.shape.density(np.log(x[pos])) / x[pos]
        return out

    def _atoms(self):
        return ((math.exp(self.shape.lo), self.shape.atom_mass),)

    def _quantile(self, u):
        return np.exp(self.shape.quantile(u))

    def _support(self):
        return math.exp(self.shape.lo), math.inf

    def _raw_mean(self):
        sh = self.shape
        ylo = sh.lo
        peak = max(ylo, (self.c1**self.tau / self.tau) ** (1.0 / (self.tau - 1.0)))
        body = lambda y: math.exp(y + float(sh.log_form(y)))
        return math.exp(ylo) + quad(body, [ylo, peak, 2 * peak + 1.0, math.inf], what="RaV mean")

    def _raw_seqs(self, log_n):
        L = log_n
        if not L > 0:
            raise ParameterError("need n > 1 for the Gumbel normalizing sequences")
        sh = self.shape
        corr = (self.b / self.tau) * math.log(L) + self.b * math.log(self.c1) + math.log(self.a)
        scale_part = sh.c2 * L ** (1.0 / self.tau - 1.0)
        b_n = math.exp(self.c1 * L ** (1.0 / self.tau) + scale_part * corr)
        return {"a_n": scale_part * b_n, "b_n": b_n}

    def classify(self):
        return Classification(Regime.GUMBEL_RAV, tau=self.tau, c1=self.c1)


@dataclass(frozen=True)
class GumbelSV(_RVBacked):
    """``W = log(1 + W')`` with W' the RV-tail law of (tau, c1, a, b)."""

    key: ClassVar[str] = "gumbel_sv"

    def _survival(self, x):
        with np.errstate(over="ignore"):
            return self.shape.survival(np.expm1(np.asarray(x, dtype=float)))

    def _density(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(over="ignore", invalid="ignore"):
            out = self.shape.density(np.expm1(x)) * np.exp(x)
        return np.nan_to_num(out, nan=0.0, posinf=0.0)

    def _atoms(self):
        return ((math.log1p(self.shape.lo), self.shape.atom_mass),)

    def _quantile(self, u):
        return np.log1p(self.shape.quantile(u))

    def _support(self):
        return math.log1p(self.shape.lo), math.inf

    def _raw_mean(self):
        lo = math.log1p(self.shape.lo)
        with np.errstate(over="ignore"):
            body = lambda x: float(self.shape.survival(np.expm1(x)))
            return lo + quad(body, [lo, lo + 1.0, math.inf], what="SV mean")

    def _raw_seqs(self, log_n):
        a_rv, b_rv = self.shape.seqs(log_n)
        return {"a_n": a_rv / (1.0 + b_rv), "b_n": math.log1p(b_rv)}

    def classify(self):
        return Classification(Regime.GUMBEL_SV, tau=self.tau, c1=self.c1)


@dataclass(frozen=True)
class FrechetPareto(WeightFamily):
    """Pure Pareto: ``P(W >= x) = (x / x_min)^-(alpha-1)`` for x >= x_min.

    ``x_min`` defaults to ``(alpha-2)/(alpha-1)`` (unit mean) when alpha > 2
    and to 1 otherwise.
    """

    alpha: float = 3.0
    x_min: float | None = None
    key: ClassVar[str] = "frechet_pareto"

    def __post_init__(self):
        if not self.alpha > 1:
            raise ParameterError(f"Frechet class needs alpha > 1, got {self.alpha}")
        if self.x_min is None:
            default = (self.alpha - 2) / (self.alpha - 1) if self.alpha > 2 else 1.0
            object.__setattr__(self, "x_min", default)
        if not self.x_min > 0:
            raise ParameterError(f"x_min must be > 0, got {self.x_min}")

    def _survival(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            return np.where(x <= self.x_min, 1.0,
                            (np.maximum(x, self.x_min) / self.x_min) ** -(self.alpha - 1))

    def _density(self, x):
        x = np.asarray(x, dtype=float)
        al = self.alpha
        with np.errstate(divide="ignore"):
            body = (al - 1) * self.x_min ** (al - 1) * np.maximum(x, self.x_min) ** (-al)
        return np.where(x > self.x_min, body, 0.0)

    def _quantile(self, u):
        return self.x_min * np.asarray(u, dtype=float) ** (-1.0 / (self.alpha - 1))

    def _support(self):
        return self.x_min, math.inf

    def _raw_mean(self):
        if self.alpha <= 2:
            return math.inf
        return self.x_min * (self.alpha - 1) / (self.alpha - 2)

    def _raw_seqs(self, log_n):
        return {"u_n": self.x_min * math.exp(log_n / (self.alpha - 1))}

    def classify(self):
        return Classification(Regime.FRECHET, alpha=self.alpha)


class _ReciprocalShift:
    """Law of ``W = x0 - 1/X``; subclasses provide ``_inner`` and ``_x0``."""

    def _inner_lo(self):
        return self._inner._support()[0]

    def _check_inner(self):
        inner = self._inner
        if not isinstance(inner, (FrechetPareto, GumbelRV, GumbelRaV)):
            raise ParameterError(
                f"bounded transform needs a Frechet or Gumbel-RV/RaV input, got {type(inner).__name__}"
            )
        lo = self._inner_lo()
        if not lo > 0:
            raise ParameterError("bounded transform needs the input supported away from 0")
        floor = self._x0 - 1.0 / lo
        has_atom = any(mass > 0 and loc == lo for loc, mass in inner._atoms())
        if floor < 0 or (floor == 0 and has_atom):
            raise ParameterError(f"x0={self._x0} too small: weights would be <= 0")

    def _survival(self, x):
        x = np.asarray(x, dtype=float)
        gap = self._x0 - x
        with np.errstate(divide="ignore"):
            inv = np.where(gap > 0, 1.0 / np.where(gap > 0, gap, 1.0), np.inf)
        out = np.where(gap > 0, self._inner._survival(np.where(gap > 0, inv, 1.0)), 0.0)
        return out

    def _density(self, x):
        x = np.asarray(x, dtype=float)
        gap = self._x0 - x
        ok = gap > 0
        g = np.where(ok, gap, 1.0)
        return np.where(ok, self._inner._density(1.0 / g) / g**2, 0.0)

    def _atoms(self):
        return tuple((self._x0 - 1.0 / loc, mass) for loc, mass in self._inner._atoms())

    def _quantile(self, u):
        return self._x0 - 1.0 / self._inner._quantile(u)

    def _support(self):
        return self._x0 - 1.0 / self._inner_lo(), self._x0

    def _raw_mean(self):
        lo, hi = self._support()
        body = lambda x: float(self._survival(x))
        return lo + quad(body, [lo, 0.5 * (lo + hi), hi], what="bounded mean")

    def _bounded_class(self):
        inner = self._inner
        if isinstance(inner, FrechetPareto):
            return Classification(Regime.BOUNDED_WEIBULL, alpha=inner.alpha)
        sub = "RV" if isinstance(inner, GumbelRV) else "RaV"
        return Classification(Regime.BOUNDED_GUMBEL, tau=inner.tau, c1=inner.c1, sub=sub)


@dataclass(frozen=True)
class BoundedTransform(_ReciprocalShift, WeightFamily):
    """``W = x0 - 1/X`` for an unbounded input law X supported away from 0."""

    inner: WeightFamily = None
    x0_raw: float = 1.0
    key: ClassVar[str] = "bounded_transform"

    def __post_init__(self):
        if self.inner is None:
            raise ParameterError("bounded transform needs an input family")
        self._check_inner()

    @property
    def _inner(self):
        return self.inner

    @property
    def _x0(self):
        return self.x0_raw

    def classify(self):
        return self._bounded_class()


@dataclass(frozen=True)
class BoundedWeibull(_ReciprocalShift, WeightFamily):
    """``W = 1 - 1/X`` with X Pareto(shape alpha-1, scale 1), i.e. Beta(1, alpha-1)."""

    alpha: float = 2.0
    key: ClassVar[str] = "bounded_weibull"

    def __post_init__(self):
        if not self.alpha > 1:
            raise ParameterError(f"bounded Weibull needs alpha > 1, got {self.alpha}")

    @cached_property
    def _inner(self):
        return FrechetPareto(self.alpha, 1.0)

    _x0 = 1.0

    def _raw_mean(self):
        return 1.0 / self.alpha

    def classify(self):
        return self._bounded_class()


@dataclass(frozen=True)
class BoundedGumbelRV(_ReciprocalShift, WeightFamily):
    """``W = 1 - 1/X`` with ``P(X >= x) = exp(-(x/c1)^tau + c1^-tau)`` on x >= 1.

    ``(1 - W)^-1 = X`` then has an RV tail with parameters (tau, c1).
    """

    tau: float = 1.0
    c1: float = 1.0
    key: ClassVar[str] = "bounded_gumbel_rv"

    def __post_init__(self):
        if not (self.tau > 0 and self.c1 > 0):
            raise ParameterError("bounded Gumbel needs tau > 0 and c1 > 0")

    @cached_property
    def _inner(self):
        return GumbelRV(self.tau, self.c1, a=math.exp(self.c1 ** -self.tau), b=0.0)

    _x0 = 1.0

    def classify(self):
        return self._bounded_class()


FAMILIES = {
    cls.key: cls
    for cls in (Constant, Atom, BoundedWeibull, BoundedGumbelRV, BoundedTransform,
                GumbelSV, GumbelRV, GumbelRaV, FrechetPareto)
}


# --------------------------------------------------------------------------
# functional interface


def sample(family: WeightFamily, rng, size=None):
    return family.sample(rng, size)


def tail_prob(family: WeightFamily, x):
    return family.tail_prob(x)


def mean(family: WeightFamily):
    return family.mean()


def norm_seqs(family: WeightFamily, n, m=1):
    return family.norm_seqs(n, m)


def classify(family: WeightFamily) -> Classification:
    return family.classify()


def bounded_from_unbounded(x_family: WeightFamily, x0: float = 1.0) -> BoundedTransform:
    """Map an unbounded law X to ``W = x0 - 1/X`` (Frechet -> Weibull MDA,
    Gumbel -> Gumbel MDA)."""
    if math.isfinite(x_family.x0):
        raise ParameterError("input family is already bounded")
    if x_family.normalize_mean:
        x_family = replace(x_family, normalize_mean=False)
    return BoundedTransform(inner=x_family, x0_raw=x0)
