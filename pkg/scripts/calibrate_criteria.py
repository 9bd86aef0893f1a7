"""Re-run selected acceptance criteria under several suite seeds to see how
much the measured values move between seeds.

    python3 scripts/calibrate_criteria.py --criteria 4,11 --seeds 1,2,3
"""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass

from wrgsim import acceptance, experiments as ex


@dataclass
class CalibrationConfig:
    criteria: tuple[int, ...] = (4, 10)
    seeds: tuple[int, ...] = (1, 2, 3)
    out: str | None = None


def main():
    p = argparse.ArgumentParser(description="seed spread of acceptance measurements")
    p.add_argument("--criteria", default="4,10")
    p.add_argument("--seeds", default="1,2,3")
    p.add_argument("--out", help="write all results as JSON here")
    a = p.parse_args()
    cfg = CalibrationConfig(tuple(int(x) for x in a.criteria.split(",")),
                            tuple(int(x) for x in a.seeds.split(",")), a.out)
    records = []
    for k in cfg.criteria:
        for seed in cfg.seeds:
            res = acceptance.CRITERIA[k](seed)
            print(f"seed {seed}: {res.line()}", flush=True)
            records.append({"criterion": k, "seed": seed, "passed": res.passed, "metrics": res.metrics})
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            json.dump(ex._jsonable(records), fh, indent=2)


if __name__ == "__main__":
    main()
