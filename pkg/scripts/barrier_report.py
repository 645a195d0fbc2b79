#!/usr/bin/env python3
"""Barrier families at growing parameters.

For the outer-cycle family: constructive length p*q^2, the locally optimal
floor and (for small sizes) a greedy locally optimal run.  For the plain
cycle family: total, the floor, and the cycle algorithm length, with the
exact optimum where it is cheap enough.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from tokenswap.approx import cycle_algorithm, greedy_locally_optimal
from tokenswap.barriers import (
    constructive_sequence_51,
    gen_local_opt_barrier,
    gen_ratio_barrier,
    locally_optimal_floor,
    ratio_floor,
)
from tokenswap.core import BudgetExceeded, total
from tokenswap.exact import solve_bfs


@dataclass
class BarrierConfig:
    local_pairs: tuple[tuple[int, int], ...] = ((4, 2), (6, 2), (6, 3), (8, 3), (8, 4), (10, 5), (16, 8))
    ratio_pairs: tuple[tuple[int, int], ...] = ((2, 2), (2, 3), (3, 2), (3, 3), (2, 4), (4, 2), (5, 2), (4, 3))
    greedy_max_n: int = 200
    bfs_max_n: int = 11
    budget: int = 5_000_000
    seed: int = 0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=BarrierConfig.seed)
    cfg = BarrierConfig(seed=ap.parse_args().seed)

    print("outer cycle with inner paths")
    print(f"{'p':>3} {'q':>3} {'n':>5} {'pq^2':>6} {'floor':>6} {'floor/pq^2':>10} {'greedy':>7}")
    for p, q in cfg.local_pairs:
        inst, ann = gen_local_opt_barrier(p, q)
        seq = constructive_sequence_51(inst, ann)
        floor = locally_optimal_floor(p, q)
        greedy = "-"
        if inst.n <= cfg.greedy_max_n:
            try:
                greedy = str(greedy_locally_optimal(inst, seed=cfg.seed).length)
            except BudgetExceeded:
                greedy = "budget"
        print(f"{p:>3} {q:>3} {inst.n:>5} {len(seq):>6} {floor:>6} {floor / len(seq):>10.3f} {greedy:>7}")

    print("\nplain cycle")
    print(f"{'p':>3} {'q':>3} {'total':>6} {'floor':>6} {'opt':>5} {'cycle alg':>9}")
    for p, q in cfg.ratio_pairs:
        inst = gen_ratio_barrier(p, q)
        opt = "-"
        if inst.n <= cfg.bfs_max_n:
            try:
                opt = str(solve_bfs(inst, cfg.budget).opt_length)
            except BudgetExceeded:
                opt = "budget"
        print(f"{p:>3} {q:>3} {total(inst):>6} {ratio_floor(p, q):>6} {opt:>5} {cycle_algorithm(inst).length:>9}")


if __name__ == "__main__":
    main()
