"""Command line front end.

Exit codes: 0 success, 2 validation failure, 3 parameter or input error,
4 search budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import __version__, experiments, formats
from .approx import cycle_algorithm, greedy_locally_optimal
from .barriers import constructive_sequence_51, gen_local_opt_barrier, gen_ratio_barrier
from .core import (
    BudgetExceeded,
    NonEdge,
    TokenSwapError,
    WeightedInstance,
    half_total_lower_bound,
    is_locally_optimal,
    norm_edge,
    region_swap_counts,
    sequence_weight,
    total,
    validate,
)
from .exact import DEFAULT_BUDGET, solve_bfs, solve_idastar, solve_weighted
from .reductions.labelcover import build_from_label_cover, completeness_sequence
from .reductions.setcover import build_from_set_cover

EXIT_OK, EXIT_INVALID, EXIT_PARAMS, EXIT_BUDGET = 0, 2, 3, 4


class UsageError(TokenSwapError, ValueError):
    pass


def parse_params(items) -> dict[str, str]:
    params = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise UsageError(f"parameter {item!r} is not key=value")
        params[key] = value
    return params


def _int(params, key, default=None) -> int:
    if key not in params:
        if default is None:
            raise UsageError(f"missing parameter {key}")
        return default
    try:
        return int(params[key])
    except ValueError:
        raise UsageError(f"parameter {key} must be an integer, got {params[key]!r}") from None


def _ints(params, key, default) -> tuple[int, ...]:
    if key not in params:
        return default
    try:
        return tuple(int(x) for x in params[key].split(","))
    except ValueError:
        raise UsageError(f"parameter {key} must be a comma separated list of integers") from None


def _pairs(params, default) -> tuple[tuple[int, int], ...]:
    if "pairs" in params:
        try:
            return tuple(tuple(int(x) for x in pair.split("x")) for pair in params["pairs"].split(","))
        except ValueError:
            raise UsageError("pairs must look like 4x2,6x3") from None
    if "p" in params or "q" in params:
        ps, qs = _ints(params, "p", (2,)), _ints(params, "q", (2,))
        return tuple((p, q) for p in ps for q in qs)
    return default


def _reject_unknown(params, allowed):
    extra = set(params) - set(allowed)
    if extra:
        raise UsageError(f"unknown parameters: {', '.join(sorted(extra))}")


def _regions_from_doc(doc) -> dict:
    return {norm_edge(u, v): label for u, v, label in doc["regions"]}


def _regions_to_doc(regions) -> list:
    return [[u, v, regions[(u, v)]] for u, v in sorted(regions)]


# Reports ----------------------------------------------------------------------


def make_report(argv, fingerprint_of, results, seconds) -> dict:
    return {
        "command": list(argv),
        "fingerprint": formats.fingerprint(fingerprint_of),
        "results": results,
        "timing": {"seconds": round(seconds, 6)},
        "version": __version__,
    }


def render(report: dict, fmt: str) -> str:
    if fmt == "machine":
        return formats.dumps(report)
    lines = [f"tokenswap {report['version']}  {' '.join(report['command'])}",
             f"fingerprint {report['fingerprint']}"]
    results = report["results"]
    rows = results.get("rows") if isinstance(results, dict) else None
    if rows is not None:
        lines.append(f"{'params':<48} {'bound':>8} {'observed':>9}  verdict")
        for row in rows:
            params = " ".join(f"{k}={v}" for k, v in row["params"].items())
            verdict = {True: "pass", False: "FAIL", None: "skip"}[row["passed"]]
            lines.append(f"{params[:48]:<48} {str(row['bound']):>8} {str(row['observed']):>9}  {verdict}")
        lines.append(f"{results['passed']}/{len(rows)} rows passed")
    else:
        for key, value in results.items():
            if key in ("witness", "sequence"):
                value = f"{len(value)} swaps"
            lines.append(f"{key:<24} {value}")
    lines.append(f"time {report['timing']['seconds']:.3f}s")
    return "\n".join(lines) + "\n"


# Commands ---------------------------------------------------------------------


def cmd_gen(args) -> tuple[int, dict]:
    params = parse_params(args.params)
    _reject_unknown(params, ("p", "q"))
    p, q = _int(params, "p"), _int(params, "q")
    if args.family == "local-opt-barrier":
        inst, ann = gen_local_opt_barrier(p, q)
        annotations = {
            "family": args.family,
            "p": p,
            "q": q,
            "segment": list(ann.segment),
            "inner_cycle": list(ann.inner_cycle),
            "inner_paths": [list(path) for path in ann.inner_paths],
            "regions": _regions_to_doc(ann.regions),
        }
        seq = constructive_sequence_51(inst, ann)
    else:
        inst = gen_ratio_barrier(p, q)
        annotations = {"family": args.family, "p": p, "q": q}
        seq = None
    doc = formats.instance_to_dict(inst)
    results = {"family": args.family, "n": inst.n, "edges": len(inst.graph.edges), "total": total(inst)}
    if args.out:
        out = Path(args.out)
        formats.write_instance(out, inst)
        Path(f"{out}.annotations.json").write_text(formats.pretty(annotations))
        results["files"] = [str(out), f"{out}.annotations.json"]
        if seq is not None:
            formats.write_sequence(f"{out}.constructive.json", seq)
            results["files"].append(f"{out}.constructive.json")
    else:
        results["instance"] = doc
    return EXIT_OK, {"fingerprint_of": doc, "results": results}


def cmd_reduce(args) -> tuple[int, dict]:
    path = Path(args.input)
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    results = {"source": args.source}
    seq = None
    if args.source == "set-cover":
        phi = formats.parse_set_cover(text, str(path))
        inst, roles = build_from_set_cover(phi)
        sidecar = {"roles": formats.roles_to_list(roles)}
    else:
        phi, labelling = formats.parse_label_cover(text, str(path))
        inst, gm = build_from_label_cover(phi)
        sidecar = {"degree": gm.degree, "roles": formats.roles_to_list(gm.roles),
                   "regions": _regions_to_doc(gm.regions)}
        if labelling is not None:
            seq = completeness_sequence(phi, labelling, gm, inst)
            results["completeness_length"] = len(seq)
    doc = formats.instance_to_dict(inst)
    results["n"] = doc["n"]
    results["edges"] = len(doc["edges"])
    if args.out:
        out = Path(args.out)
        formats.write_instance(out, inst)
        Path(f"{out}.roles.json").write_text(formats.pretty(sidecar))
        results["files"] = [str(out), f"{out}.roles.json"]
        if seq is not None:
            formats.write_sequence(f"{out}.completeness.json", seq)
            results["files"].append(f"{out}.completeness.json")
    else:
        results["instance"] = doc
        results["roles"] = sidecar
    return EXIT_OK, {"fingerprint_of": doc, "results": results}


def cmd_solve(args) -> tuple[int, dict]:
    inst = formats.read_instance(args.input)
    winst = inst if isinstance(inst, WeightedInstance) else None
    plain = winst.instance if winst else inst
    results = {"mode": args.mode, "n": plain.n, "total": total(plain),
               "half_total_lower_bound": half_total_lower_bound(plain)}
    if args.mode == "exact-weighted":
        if winst is None:
            raise UsageError("exact-weighted needs an instance with weights")
        res = solve_weighted(winst, args.budget)
        seq = res.witness
        results.update(opt_weight=formats.format_weight(res.opt_weight), length=len(seq),
                       expanded_states=res.expanded_states)
    elif args.mode in ("exact-bfs", "exact-ida"):
        solver = solve_bfs if args.mode == "exact-bfs" else solve_idastar
        res = solver(plain, args.budget)
        seq = res.witness
        results.update(opt_length=res.opt_length, expanded_states=res.expanded_states)
    else:
        if args.mode == "approx-cycle":
            res = cycle_algorithm(plain)
        else:
            res = greedy_locally_optimal(plain, seed=args.seed)
            results["seed"] = args.seed
        seq = res.sequence
        results.update(length=res.length, ratio_to_lower_bound=res.ratio)
    report = validate(plain, seq)
    results["reaches_target"] = report.reaches_target
    if winst is not None:
        results["weight"] = formats.format_weight(sequence_weight(winst, seq))
    results["witness"] = [list(s) for s in seq]
    if args.out:
        formats.write_sequence(args.out, seq)
    code = EXIT_OK if report.reaches_target else EXIT_INVALID
    return code, {"fingerprint_of": formats.instance_to_dict(inst), "results": results}


def cmd_check(args) -> tuple[int, dict]:
    inst = formats.read_instance(args.input)
    seq = formats.read_sequence(args.sequence)
    plain = inst.instance if isinstance(inst, WeightedInstance) else inst
    fp = {"instance": formats.instance_to_dict(inst), "sequence": formats.sequence_to_dict(seq)}
    results = {"length": len(seq)}
    try:
        report = validate(plain, seq)
    except NonEdge as exc:
        results.update(reaches_target=False, non_edge_index=exc.index, non_edge=list(exc.edge))
        return EXIT_INVALID, {"fingerprint_of": fp, "results": results}
    local = is_locally_optimal(plain, seq)
    results.update(
        reaches_target=report.reaches_target,
        locally_optimal=local.locally_optimal,
        first_violation=local.first_violation,
        half_total_lower_bound=half_total_lower_bound(plain),
    )
    if isinstance(inst, WeightedInstance):
        results["weight"] = formats.format_weight(sequence_weight(inst, seq))
    if args.regions:
        doc = formats.load_document(Path(args.regions).read_text(), args.regions)
        if "regions" not in doc:
            raise UsageError(f"{args.regions} has no regions")
        results["region_swap_counts"] = region_swap_counts(plain, seq, _regions_from_doc(doc))
    code = EXIT_OK if report.reaches_target else EXIT_INVALID
    return code, {"fingerprint_of": fp, "results": results}


def cmd_experiment(args) -> tuple[int, dict]:
    params = parse_params(args.params)
    name = args.name
    common = {"jobs": args.jobs}
    if name == "completeness":
        _reject_unknown(params, ("d", "sigma", "size"))
        rows = experiments.completeness(
            _ints(params, "d", (2, 4)), _ints(params, "sigma", (1, 2)), _ints(params, "size", (2, 3)),
            seed=args.seed, budget=args.budget or experiments.IDA_CHECK_BUDGET, **common,
        )
    elif name == "setcover-equivalence":
        _reject_unknown(params, ("maxU", "maxK"))
        rows = experiments.setcover_equivalence(
            _int(params, "maxU", 5), _int(params, "maxK", 4), budget=args.budget or DEFAULT_BUDGET, **common
        )
    elif name == "barrier-51":
        _reject_unknown(params, ("pairs", "p", "q"))
        rows = experiments.barrier_51(_pairs(params, ((4, 2), (6, 3), (8, 4))), seed=args.seed, **common)
    elif name == "barrier-52":
        _reject_unknown(params, ("pairs", "p", "q"))
        rows = experiments.barrier_52(_pairs(params, ((2, 2), (3, 2), (2, 3))),
                                      budget=args.budget or DEFAULT_BUDGET, **common)
    else:
        _reject_unknown(params, ("trials", "n"))
        rows = experiments.approx_ratio(_int(params, "trials", 500), _int(params, "n", 8), seed=args.seed,
                                        budget=args.budget or DEFAULT_BUDGET, **common)
    dicts = [r.to_dict() for r in rows]
    results = {"suite": name, "rows": dicts, "passed": sum(r.passed is True for r in rows),
               "failed": sum(r.passed is False for r in rows), "skipped": sum(r.passed is None for r in rows)}
    if results["failed"]:
        code = EXIT_INVALID
    elif results["skipped"]:
        code = EXIT_BUDGET
    else:
        code = EXIT_OK
    fp = {"suite": name, "params": params, "seed": args.seed}
    return code, {"fingerprint_of": fp, "results": results}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tokenswap", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "machine"), default="table")
    common.add_argument("--report", help="also write the machine report to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a barrier instance")
    p.add_argument("family", choices=("local-opt-barrier", "ratio-barrier"))
    p.add_argument("params", nargs="*", metavar="key=value")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce", parents=[common], help="build a token swapping instance from a cover problem")
    p.add_argument("source", choices=("label-cover", "set-cover"))
    p.add_argument("input")
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", parents=[common], help="solve an instance exactly or approximately")
    p.add_argument("input")
    p.add_argument("--mode", default="exact-bfs",
                   choices=("exact-bfs", "exact-ida", "exact-weighted", "approx-cycle", "greedy"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--out", help="write the swap sequence here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", parents=[common], help="validate a swap sequence")
    p.add_argument("input")
    p.add_argument("sequence")
    p.add_argument("--regions", help="annotation or roles file with edge regions")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("experiment", parents=[common], help="run an experiment suite")
    p.add_argument("name", choices=tuple(experiments.SUITES))
    p.add_argument("params", nargs="*", metavar="key=value")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write the machine report here")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        code, payload = args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (TokenSwapError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    report = make_report(argv, payload["fingerprint_of"], payload["results"], time.perf_counter() - t0)
    sys.stdout.write(render(report, args.format))
    target = args.report or (args.out if args.command == "experiment" else None)
    if target:
        Path(target).write_text(formats.dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
