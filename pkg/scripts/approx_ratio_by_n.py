#!/usr/bin/env python3
"""Cycle algorithm vs. optimum on random connected graphs, grouped by vertex count.

Prints, per n, the mean and max of ALG/OPT, how often the output is not
locally optimal, and the mean of OPT / ceil(total/2).
"""

from __future__ import annotations

import argparse
import random
import statistics
from collections import defaultdict
from dataclasses import dataclass

from tokenswap.approx import cycle_algorithm
from tokenswap.core import half_total_lower_bound, is_locally_optimal
from tokenswap.exact import solve_bfs
from tokenswap.experiments import random_connected_instance


@dataclass
class SweepConfig:
    n_values: tuple[int, ...] = (3, 4, 5, 6, 7, 8)
    trials_per_n: int = 200
    seed: int = 1
    density: float | None = None  # None draws a density per instance


def sweep(cfg: SweepConfig):
    rng = random.Random(cfg.seed)
    table = defaultdict(lambda: {"ratio": [], "tight": [], "not_local": 0})
    for n in cfg.n_values:
        for _ in range(cfg.trials_per_n):
            inst = random_connected_instance(n, rng, cfg.density)
            opt = solve_bfs(inst).opt_length
            if opt == 0:
                continue
            alg = cycle_algorithm(inst)
            cell = table[n]
            cell["ratio"].append(alg.length / opt)
            cell["tight"].append(opt / half_total_lower_bound(inst))
            cell["not_local"] += not is_locally_optimal(inst, alg.sequence)
    return table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=SweepConfig.trials_per_n)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    ap.add_argument("--density", type=float, default=None)
    args = ap.parse_args()
    cfg = SweepConfig(trials_per_n=args.trials, seed=args.seed, density=args.density)
    print(f"{'n':>3} {'cases':>6} {'mean ALG/OPT':>13} {'max ALG/OPT':>12} {'not local':>10} {'OPT/LB':>7}")
    for n, cell in sorted(sweep(cfg).items()):
        r = cell["ratio"]
        print(f"{n:>3} {len(r):>6} {statistics.mean(r):>13.3f} {max(r):>12.3f} "
              f"{cell['not_local']:>10} {statistics.mean(cell['tight']):>7.3f}")


if __name__ == "__main__":
    main()
