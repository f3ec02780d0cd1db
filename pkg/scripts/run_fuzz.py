#!/usr/bin/env python3
"""Fuzz one statement check over seeded random instances and tally outcomes.

Example:
    python scripts/run_fuzz.py --statement generation --dim 2 --seed 0 --count 200
    python scripts/run_fuzz.py --statement wall-bound --dim 3 --count 50 --verbose
"""

import argparse
import sys
import time
from collections import Counter
from dataclasses import dataclass

from toricva.harness import (
    check_corner_containment,
    check_generation,
    check_interior_bound,
    check_nef_excluding_pspace,
    check_nef_threshold,
    check_nonregular_bound,
    check_wall_bound,
    random_instance,
)

GLOBAL = {
    "generation": check_generation,
    "nef-sharp": check_nef_excluding_pspace,
    "nef": check_nef_threshold,
    "corners": check_corner_containment,
}

PER_CONE = {
    "wall-bound": lambda inst, ci: check_wall_bound(inst, ci),
    "interior-bound": lambda inst, ci: check_interior_bound(inst, ci, bound=4),
    "nonregular-bound": check_nonregular_bound,
}


@dataclass(frozen=True)
class FuzzConfig:
    statement: str
    dim: int
    seed: int
    count: int
    verbose: bool


def reports_for(cfg: FuzzConfig, inst):
    if cfg.statement in GLOBAL:
        yield GLOBAL[cfg.statement](inst)
        return
    check = PER_CONE[cfg.statement]
    for ci in range(len(inst.fan.max_cones)):
        yield check(inst, ci)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--statement", choices=sorted(GLOBAL | PER_CONE), default="generation")
    parser.add_argument("--dim", type=int, choices=(2, 3), default=2)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--count", type=int, default=100)
    parser.add_argument("--verbose", action="store_true", help="print one line per report")
    args = parser.parse_args()
    cfg = FuzzConfig(args.statement, args.dim, args.seed, args.count, args.verbose)

    tally = Counter()
    failed_hyps = Counter()
    start = time.monotonic()
    for i in range(cfg.count):
        inst = random_instance(cfg.dim, cfg.seed + i)
        for rep in reports_for(cfg, inst):
            tally[rep.status] += 1
            for h in rep.hypotheses:
                if not h.holds:
                    failed_hyps[h.name] += 1
            if cfg.verbose or rep.status == "fail":
                where = f" cone {rep.cone_data[0].cone_index}" if cfg.statement in PER_CONE else ""
                print(f"{rep.label}{where}: {rep.status}")
                for f in rep.failures:
                    print(f"  {f.kind} {f.index}: {f.message}")
    elapsed = time.monotonic() - start

    print(f"statement {cfg.statement}, dim {cfg.dim}, seeds {cfg.seed}..{cfg.seed + cfg.count - 1}")
    print(f"reports: " + ", ".join(f"{k}={v}" for k, v in sorted(tally.items())))
    if failed_hyps:
        print("hypothesis rejections: " + ", ".join(f"{k}={v}" for k, v in sorted(failed_hyps.items())))
    print(f"elapsed: {elapsed:.1f}s")
    return 2 if tally["fail"] else 0


if __name__ == "__main__":
    sys.exit(main())
