#!/usr/bin/env python3
"""Run every experiment suite at its default scale and write one JSON report per suite."""

from __future__ import annotations

import argparse
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from tokenswap import experiments, formats


@dataclass
class SuiteConfig:
    out_dir: Path = Path("results")
    seed: int = 1
    jobs: int = 1
    trials: int = 500
    n_max: int = 8
    max_universe: int = 5
    max_sets: int = 4


def run(cfg: SuiteConfig) -> dict[str, dict]:
    plan = {
        "completeness": lambda: experiments.completeness(seed=cfg.seed, jobs=cfg.jobs),
        "setcover-equivalence": lambda: experiments.setcover_equivalence(cfg.max_universe, cfg.max_sets, jobs=cfg.jobs),
        "barrier-51": lambda: experiments.barrier_51(seed=cfg.seed, jobs=cfg.jobs),
        "barrier-52": lambda: experiments.barrier_52(jobs=cfg.jobs),
        "approx-ratio": lambda: experiments.approx_ratio(cfg.trials, cfg.n_max, seed=cfg.seed, jobs=cfg.jobs),
    }
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    summary = {}
    for name, suite in plan.items():
        t0 = time.perf_counter()
        rows = suite()
        seconds = time.perf_counter() - t0
        verdicts = [r.passed for r in rows]
        summary[name] = {
            "rows": len(rows),
            "passed": verdicts.count(True),
            "failed": verdicts.count(False),
            "skipped": verdicts.count(None),
            "seconds": round(seconds, 2),
        }
        doc = {"suite": name, "config": {k: str(v) for k, v in asdict(cfg).items()},
               "rows": [r.to_dict() for r in rows]}
        (cfg.out_dir / f"{name}.json").write_text(formats.pretty(doc))
        s = summary[name]
        print(f"{name:<22} {s['passed']:>5}/{s['rows']:<5} passed  {s['failed']} failed  "
              f"{s['skipped']} skipped  {seconds:7.1f}s")
    return summary


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path, default=SuiteConfig.out_dir)
    ap.add_argument("--seed", type=int, default=SuiteConfig.seed)
    ap.add_argument("--jobs", type=int, default=SuiteConfig.jobs)
    ap.add_argument("--trials", type=int, default=SuiteConfig.trials)
    args = ap.parse_args()
    summary = run(SuiteConfig(out_dir=args.out_dir, seed=args.seed, jobs=args.jobs, trials=args.trials))
    raise SystemExit(0 if all(s["failed"] == 0 for s in summary.values()) else 2)


if __name__ == "__main__":
    main()
