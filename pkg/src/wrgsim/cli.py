"""Command-line front end.

    python3 -m wrgsim simulate   --family constant --c 1 --n 1000 --seed 7 --out run/
    python3 -m wrgsim theory     --family frechet_pareto --alpha 3 --m 1 --kmax 40
    python3 -m wrgsim ppp        --functional gumbel_window --samples 1000 --seed 1
    python3 -m wrgsim experiment --kind DegreeDist --family constant --n 100000 --seed 1
    python3 -m wrgsim verify     --suite primary --seed 1

Every subcommand accepts ``--config FILE`` (flat ``key=value`` text) and
``--dump-config FILE``; flags override values from the config file, and the
fully resolved configuration is logged and, with ``--out``, saved as
``config.txt`` next to the outputs.  Exit status: 0 success, 1 parameter or
usage error, 2 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import acceptance
from . import experiments as ex
from . import limit_theory as lt
from . import ppp_limits as pl
from .config import (format_config, family_from_config, family_to_config, parse_bool,
                     parse_float, read_config)
from .errors import InvariantError, NumericError, ParameterError, ResourceError, WrgError
from .weightdist import Regime
from .wrg_core import WrgConfig, grow, max_degree_stats, write_snapshot

log = logging.getLogger("wrgsim")

PPP_FUNCTIONALS = ("gumbel_window", "gumbel_window_ppp", "frechet_max", "z",
                   "location_I", "location_window")


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with status 1 instead of argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _family_flags(p):
    g = p.add_argument_group("weight family")
    g.add_argument("--family", help="constant, atom, bounded_weibull, bounded_gumbel_rv, "
                   "bounded_transform, gumbel_sv, gumbel_rv, gumbel_rav, frechet_pareto")
    for flag in ("--c", "--q0", "--s", "--alpha", "--x-min", "--tau", "--c1", "--a", "--b", "--x0"):
        g.add_argument(flag, type=str)
    g.add_argument("--normalize-mean", nargs="?", const="true", default=None,
                   help="rescale the law to mean one")


def _common(p, *, seed_help="base seed"):
    p.add_argument("--config", help="flat key=value config file; flags override it")
    p.add_argument("--dump-config", metavar="FILE",
                   help="write the resolved config here ('-' for stdout)")
    p.add_argument("--seed", type=int, help=seed_help)
    p.add_argument("--out", help="output directory")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wrgsim", description="Weighted recursive graph simulation and theory.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="grow one graph and write a snapshot")
    _common(p)
    _family_flags(p)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--variant", choices=("fixed", "random"))

    p = sub.add_parser("theory", help="limiting degree law and max-degree prediction")
    _common(p)
    _family_flags(p)
    p.add_argument("--n", type=int, help="graph size for the max-degree prediction")
    p.add_argument("--m", type=int)
    p.add_argument("--kmax", type=int)

    p = sub.add_parser("ppp", help="sample limit functionals or tabulate their CDFs")
    _common(p)
    p.add_argument("--functional", choices=PPP_FUNCTIONALS)
    p.add_argument("--samples", type=int)
    p.add_argument("--cdf", nargs="?", const="true", default=None,
                   help="emit a CDF table on --grid instead of samples")
    p.add_argument("--grid", help="lo:hi:count for CDF tables")
    p.add_argument("--alpha", type=str)
    p.add_argument("--m", type=int)
    p.add_argument("--window-s", type=str)
    p.add_argument("--window-t", type=str)
    p.add_argument("--truncation", type=str, help="lowest mark kept by the Gumbel PPP sampler")
    p.add_argument("--g-min", type=str, help="lowest mark kept by the Z sampler")

    p = sub.add_parser("experiment", help="run a replicated experiment and write its report")
    _common(p)
    _family_flags(p)
    p.add_argument("--kind", choices=[k.value for k in ex.ExperimentKind])
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--variant", choices=("fixed", "random"))
    p.add_argument("--replicas", type=int)
    p.add_argument("--ladder", help="comma-separated graph sizes")
    p.add_argument("--window-s", type=str)
    p.add_argument("--window-t", type=str)
    p.add_argument("--window-gamma", type=str, help="index exponent; 'rav' for the t_n window")
    p.add_argument("--zeta0", type=str)
    p.add_argument("--kmax", type=int)
    p.add_argument("--g-min", type=str)
    p.add_argument("--conditional-only", nargs="?", const="true", default=None)
    p.add_argument("--workers", type=int)

    p = sub.add_parser("verify", help="run the acceptance suite")
    _common(p, seed_help="suite seed (required)")
    p.add_argument("--suite", choices=("primary",))
    p.add_argument("--criteria", help="comma-separated subset, e.g. 1,7,9")
    return parser


# --------------------------------------------------------------------------
# config resolution


_NON_CONFIG = {"command", "config", "dump_config", "out", "verbose"}


def resolve(args) -> dict[str, str]:
    """Config-file values overlaid with every flag given on the command line."""
    values = read_config(args.config) if args.config else {}
    for key, value in vars(args).items():
        if key in _NON_CONFIG or value is None:
            continue
        values[key] = str(value)
    return values


def _get(values, key, conv, default=None):
    if key not in values or values[key] == "":
        return default
    raw = values[key]
    try:
        return conv(key, raw)
    except ParameterError:
        raise
    except ValueError:
        raise ParameterError(f"{key}: bad value {raw!r}") from None


def _int(key, raw):
    return int(raw)


def _float(key, raw):
    return parse_float(key, raw)


def _bool(key, raw):
    return parse_bool(raw)


def _str(key, raw):
    return raw


def _family(values):
    if "family" not in values:
        raise ParameterError("--family is required")
    return family_from_config(values)


def _family_config(values):
    fam = _family(values)
    return fam, family_to_config(fam)


def _write_text(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text, encoding="utf-8")


def _finish_config(args, resolved: dict):
    text = format_config(resolved)
    log.info("resolved config: %s", " ".join(text.split()))
    if args.dump_config:
        _write_text(args.dump_config, text)
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        (Path(args.out) / "config.txt").write_text(text, encoding="utf-8")


def _emit(args, name, text):
    if args.out:
        path = Path(args.out) / name
        path.write_text(text, encoding="utf-8")
        log.info("wrote %s", path)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# subcommands


def cmd_simulate(args, values):
    fam = _family(values)
    config = WrgConfig(
        n=_get(values, "n", _int, 1000),
        m=_get(values, "m", _int, 1),
        family=fam,
        variant=_get(values, "variant", _str, "fixed"),
        seed=_get(values, "seed", _int, 0),
    )
    _finish_config(args, config.to_config())
    snap = grow(config)
    top, where = max_degree_stats(snap.in_degrees)
    summary = {"n": snap.n, "m": snap.m,
               "max_degree": top, "argmax": where,
               "zero_fraction": float(np.mean(snap.in_degrees == 0))}
    if args.out:
        csv_path, _ = write_snapshot(snap, args.out)
        log.info("wrote %s", csv_path)
    print(json.dumps(summary, default=float))
    return 0


def _theory_rows(fam, m, kmax):
    table = lt.pk_table(fam, m, kmax)
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["k", "p_k", "asymptotic_lower", "asymptotic_upper"])
    for k, p in enumerate(table):
        try:
            form = lt.pk_asymptotic(fam, m, k)
            lo, hi = repr(float(form.lower)), repr(float(form.upper))
        except ParameterError:
            lo = hi = ""
        w.writerow([k, repr(float(p)), lo, hi])
    return out.getvalue()


def cmd_theory(args, values):
    fam, fam_cfg = _family_config(values)
    m = _get(values, "m", _int, 1)
    kmax = _get(values, "kmax", _int, 30)
    n = _get(values, "n", _int)
    _finish_config(args, {**fam_cfg, "m": m, "kmax": kmax, "n": n})
    _emit(args, "theory_pk.csv", _theory_rows(fam, m, kmax))
    record = {"family": fam_cfg, "m": m, "theta_m": lt.theta_m(fam, m),
              "regime": fam.classify().regime.value}
    try:
        loc = lt.location_prediction(fam, m)
        record["location"] = {"exponent": loc.exponent, "tag": loc.tag, "law": loc.law}
    except ParameterError as exc:
        record["location"] = {"unavailable": str(exc)}
    if n is not None:
        record["n"] = n
        record["max_degree"] = lt.max_degree_prediction(fam, m, n).to_dict()
    text = json.dumps(ex._jsonable(record), indent=2, sort_keys=True) + "\n"
    _emit(args, "theory_prediction.json", text)
    return 0


def _grid(values, default):
    spec = values.get("grid", default)
    try:
        lo, hi, count = spec.split(":")
        return np.linspace(float(lo), float(hi), int(count))
    except ValueError:
        raise ParameterError(f"--grid must be lo:hi:count, got {spec!r}") from None


def cmd_ppp(args, values):
    func = _get(values, "functional", _str, "gumbel_window")
    if func not in PPP_FUNCTIONALS:
        raise ParameterError(f"unknown functional {func!r}")
    samples = _get(values, "samples", _int, 1000)
    want_cdf = _get(values, "cdf", _bool, False)
    alpha = _get(values, "alpha", _float, 3.0 if func != "z" else 1.5)
    m = _get(values, "m", _int, 1)
    s = _get(values, "window_s", _float, 1.0)
    t = _get(values, "window_t", _float, math.e)
    truncation = _get(values, "truncation", _float, -10.0)
    g_min = _get(values, "g_min", _float, 1e-3)
    seed = _get(values, "seed", _int, 0)
    resolved = {"functional": func, "samples": samples, "cdf": want_cdf, "alpha": alpha, "m": m,
                "window_s": s, "window_t": t, "truncation": truncation, "g_min": g_min,
                "seed": seed, "grid": values.get("grid")}
    _finish_config(args, resolved)

    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    if want_cdf:
        cdfs = {
            "gumbel_window": (lambda x: pl.gumbel_window_max_cdf(s, t, x), "-3:8:111"),
            "gumbel_window_ppp": (lambda x: pl.gumbel_window_max_cdf(s, t, x), "-3:8:111"),
            "frechet_max": (lambda x: pl.frechet_max_cdf(alpha, m, x), "0.1:10:100"),
            "location_I": (lambda x: pl.location_I_alpha_cdf(alpha, x), "0.01:0.99:99"),
            "location_window": (lambda x: pl.location_window_cdf(s, t, x), f"{s}:{t}:101"),
        }
        if func not in cdfs:
            raise ParameterError(f"no closed-form CDF for {func!r}; sample it instead")
        fn, default = cdfs[func]
        grid = _grid(values, default)
        w.writerow(["x", "cdf"])
        for x, c in zip(grid, np.atleast_1d(fn(grid))):
            w.writerow([repr(float(x)), repr(float(c))])
    else:
        rng = np.random.default_rng(seed)
        if func == "gumbel_window":
            draws = pl.gumbel_window_max_sample(s, t, rng, samples)
        elif func == "gumbel_window_ppp":
            draws = pl.gumbel_window_max_ppp_sample(s, t, rng, samples, x_min=truncation)
        elif func == "frechet_max":
            draws = pl.frechet_max_quantile(alpha, m, rng.random(samples))
        elif func == "z":
            draws = pl.z_sampler(alpha, m, g_min, rng, samples)
        elif func == "location_I":
            draws = pl.location_I_alpha_sample(alpha, rng, samples)
        else:
            draws = pl.location_window_sample(s, t, rng, samples)
        w.writerow(["sample", "value"])
        for i, v in enumerate(np.atleast_1d(draws)):
            w.writerow([i, repr(float(v))])
    _emit(args, f"ppp_{func}{'_cdf' if want_cdf else ''}.csv", out.getvalue())
    return 0


def _window(values, fam):
    keys = ("window_s", "window_t", "window_gamma", "zeta0")
    if not any(k in values for k in keys):
        return None
    g = values.get("window_gamma")
    if g is None:
        cls = fam.classify()
        gamma = lt.gamma_exponent(cls.tau) if cls.regime is Regime.GUMBEL_RV else None
    elif g.lower() in ("rav", "none"):
        gamma = None
    else:
        gamma = parse_float("window_gamma", g)
    return ex.WindowSpec(_get(values, "window_s", _float, 1.0), _get(values, "window_t", _float, math.e),
                         gamma, _get(values, "zeta0", _float, 0.0))


def cmd_experiment(args, values):
    fam, fam_cfg = _family_config(values)
    kind = _get(values, "kind", _str, "DegreeDist")
    ladder_raw = values.get("ladder", "")
    try:
        ladder = tuple(int(float(x)) for x in ladder_raw.split(",") if x.strip())
    except ValueError:
        raise ParameterError(f"--ladder must be comma-separated sizes, got {ladder_raw!r}") from None
    n = _get(values, "n", _int, ladder[-1] if ladder else 10**5)
    config = WrgConfig(n=n, m=_get(values, "m", _int, 1), family=fam,
                       variant=_get(values, "variant", _str, "fixed"))
    window = _window(values, fam)
    if window is None and kind == ex.ExperimentKind.WINDOW_GUMBEL.value:
        window = ex.WindowSpec()
    plan = ex.ExperimentPlan(
        kind=kind, config=config,
        replicas=_get(values, "replicas", _int, 20),
        base_seed=_get(values, "seed", _int, 0),
        window=window, ladder=ladder,
        kmax=_get(values, "kmax", _int, 30),
        conditional_only=_get(values, "conditional_only", _bool, False),
        g_min=_get(values, "g_min", _float, 1e-3),
        workers=_get(values, "workers", _int, 1),
    )
    resolved = {"kind": plan.kind.value, **fam_cfg, "n": n, "m": config.m,
                "variant": config.variant.value, "replicas": plan.replicas,
                "seed": plan.base_seed, "ladder": ",".join(map(str, ladder)) or None,
                "kmax": plan.kmax, "conditional_only": plan.conditional_only,
                "g_min": plan.g_min, "workers": plan.workers}
    if window is not None:
        resolved.update(window_s=window.s, window_t=window.t,
                        window_gamma="rav" if window.gamma is None else window.gamma,
                        zeta0=window.zeta0)
    _finish_config(args, resolved)
    report = ex.run(plan)
    if args.out:
        paths = report.write(args.out)
        for path in paths:
            log.info("wrote %s", path)
    print(json.dumps(ex._jsonable({"kind": report.kind, "plan_hash": report.plan_hash,
                                   "statistics": report.statistics,
                                   "wall_clock": report.wall_clock}), sort_keys=True))
    return 0


def cmd_verify(args, values):
    if "seed" not in values:
        raise ParameterError("verify needs --seed: all randomness flows through it")
    seed = _get(values, "seed", _int)
    suite = _get(values, "suite", _str, "primary")
    if suite != "primary":
        raise ParameterError(f"unknown suite {suite!r}")
    raw = values.get("criteria", "")
    try:
        only = {int(x) for x in raw.split(",") if x.strip()} or None
    except ValueError:
        raise ParameterError(f"--criteria must be comma-separated numbers, got {raw!r}") from None
    if only and not only <= set(acceptance.CRITERIA):
        raise ParameterError(f"criteria must be within 1..{len(acceptance.CRITERIA)}")
    _finish_config(args, {"suite": suite, "seed": seed,
                          "criteria": ",".join(map(str, sorted(only))) if only else None})
    results = acceptance.run_suite(seed, only, echo=lambda line: print(line, flush=True))
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    if args.out:
        records = [{"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail,
                    "metrics": r.metrics, "seconds": r.seconds} for r in results]
        text = json.dumps(ex._jsonable(records), indent=2) + "\n"
        (Path(args.out) / f"verify_seed{seed}.json").write_text(text, encoding="utf-8")
    return 0 if passed == len(results) else 1


COMMANDS = {"simulate": cmd_simulate, "theory": cmd_theory, "ppp": cmd_ppp,
            "experiment": cmd_experiment, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        values = resolve(args)
        return COMMANDS[args.command](args, values)
    except (NumericError, InvariantError) as exc:
        print(f"wrgsim: numeric failure: {exc}", file=sys.stderr)
        return 2
    except (ParameterError, ResourceError, WrgError, OSError) as exc:
        print(f"wrgsim: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
