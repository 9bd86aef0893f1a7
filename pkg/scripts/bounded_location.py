"""Where does the maximum degree sit for bounded weights?

For bounded weights no location theorem is available; the conjectured limit of
log I_n / log n is 1 - (theta-1)/(theta log theta).  This script measures the
empirical exponent across a ladder, for the raw degrees and for the
conditional means, and prints it next to the conjectured value.  Nothing
here is asserted.

    python3 scripts/bounded_location.py --ladder 10000,100000,1000000 --replicas 40
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from wrgsim import experiments as ex, limit_theory as lt
from wrgsim.weightdist import Atom, BoundedWeibull, Constant
from wrgsim.wrg_core import WrgConfig

FAMILIES = {"constant": Constant(1.0), "atom": Atom(0.5, 0.5), "bounded_weibull": BoundedWeibull(2.0)}


@dataclass
class LocationConfig:
    family: str = "constant"
    m: int = 1
    ladder: tuple[int, ...] = (10**4, 10**5, 10**6)
    replicas: int = 40
    seed: int = 0


def main():
    p = argparse.ArgumentParser(description="bounded-weight location exponent")
    p.add_argument("--family", choices=sorted(FAMILIES), default="constant")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--ladder", default="10000,100000,1000000")
    p.add_argument("--replicas", type=int, default=40)
    p.add_argument("--seed", type=int, default=0)
    a = p.parse_args()
    cfg = LocationConfig(a.family, a.m, tuple(int(float(x)) for x in a.ladder.split(",")), a.replicas, a.seed)
    fam = FAMILIES[cfg.family]
    conj = lt.location_prediction(fam, cfg.m)
    plan = ex.ExperimentPlan("LocationScaling", WrgConfig(n=cfg.ladder[-1], m=cfg.m, family=fam),
                             replicas=cfg.replicas, base_seed=cfg.seed, ladder=cfg.ladder)
    rep = ex.run(plan)
    print(f"conjectured exponent ({conj.tag}): {conj.exponent:.4f}")
    print("n          raw median   raw q25..q75        cond median")
    for lv in rep.summary["levels"]:
        raw, cond = lv["loc_exponent"], lv["cond_loc_exponent"]
        print(f"{lv['n']:<10d} {raw['median']:.4f}       {raw['q25']:.4f}..{raw['q75']:.4f}     {cond['median']:.4f}")


if __name__ == "__main__":
    main()
