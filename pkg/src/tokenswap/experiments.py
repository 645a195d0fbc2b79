"""Experiment suites: random instance generators and row-by-row checks.

Every suite returns a list of ``Row`` objects holding the instance
parameters, the bound being tested, the observed value and a verdict.
Rows are independent, so ``jobs > 1`` farms them out to worker processes;
row order always follows parameter order.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .approx import cycle_algorithm, greedy_locally_optimal
from .barriers import (
    constructive_sequence_51,
    gen_local_opt_barrier,
    gen_ratio_barrier,
    inner_cycle_violations,
    locally_optimal_floor,
    ratio_floor,
)
from .core import (
    BudgetExceeded,
    Configuration,
    Graph,
    Instance,
    is_locally_optimal,
    norm_edge,
    sequence_weight,
    total,
    validate,
)
from .exact import DEFAULT_BUDGET, solve_bfs, solve_idastar, solve_weighted
from .reductions.labelcover import (
    LabelCoverInstance,
    Labelling,
    build_from_label_cover,
    classify_detour_tokens,
    completeness_length_bound,
    completeness_sequence,
)
from .reductions.setcover import (
    SetCoverInstance,
    build_from_set_cover,
    cover_sequence,
    enumerate_set_cover_instances,
    optimal_cover,
    set_cover_bruteforce,
)

# Four elements, three sets; the first and last element each force a set.
EXAMPLE_SET_COVER = SetCoverInstance(4, (frozenset({0, 1}), frozenset({1, 2}), frozenset({1, 2, 3})))


@dataclass
class Row:
    params: dict
    bound: int | Fraction | None
    observed: int | Fraction | None
    passed: bool | None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        def num(x):
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
            return x

        return {
            "params": self.params,
            "bound": num(self.bound),
            "observed": num(self.observed),
            "passed": self.passed,
            "extra": {k: num(v) for k, v in self.extra.items()},
        }


# Generators ----------------------------------------------------------------


def random_connected_instance(n: int, rng: random.Random, density: float | None = None) -> Instance:
    """Random spanning tree plus extra edges, with a uniform random target."""
    if density is None:
        density = rng.uniform(0.0, 0.5)
    order = list(range(n))
    rng.shuffle(order)
    edges = {tuple(sorted((order[i], order[rng.randrange(i)]))) for i in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < density:
                edges.add((u, v))
    target = list(range(n))
    rng.shuffle(target)
    return Instance(Graph(n, edges), Configuration.identity(n), Configuration(tuple(target)))


def random_corpus(trials: int, n_max: int, seed: int, n_min: int = 2) -> list[Instance]:
    rng = random.Random(seed)
    return [random_connected_instance(rng.randint(n_min, n_max), rng) for _ in range(trials)]


def random_label_cover(
    size: int, degree: int, alphabet: int, rng: random.Random
) -> tuple[LabelCoverInstance, Labelling]:
    """Simple ``degree``-regular bipartite instance with a planted full labelling.

    Edges are ``degree`` shifted copies of a random perfect matching, so
    ``size >= degree`` is required.  Each constraint maps the planted left
    label to the planted right label; other entries are random.
    """
    if degree > size:
        raise ValueError(f"a simple {degree}-regular bipartite graph needs at least {degree} vertices per side")
    perm = list(range(size))
    rng.shuffle(perm)
    shifts = rng.sample(range(size), degree)
    edges = sorted((i, perm[(i + s) % size]) for i in range(size) for s in shifts)
    left = tuple(rng.randrange(alphabet) for _ in range(size))
    right = tuple(rng.randrange(alphabet) for _ in range(size))
    tables = []
    for x, y in edges:
        table = [rng.randrange(alphabet) for _ in range(alphabet)]
        table[left[x]] = right[y]
        tables.append(tuple(table))
    return LabelCoverInstance(size, size, alphabet, tuple(edges), tuple(tables)), Labelling(left, right)


# Row workers (module level so they pickle) ----------------------------------


def _completeness_row(args) -> Row:
    degree, alphabet, size, seed, budget, ida_check = args
    rng = random.Random(seed)
    phi, lab = random_label_cover(size, degree, alphabet, rng)
    inst, gm = build_from_label_cover(phi)
    seq = completeness_sequence(phi, lab, gm, inst)
    report = validate(inst, seq)
    bound = completeness_length_bound(degree, 2 * size)
    detours = classify_detour_tokens(inst, gm, seq).detour_count
    extra = {"n": inst.n, "reaches_target": report.reaches_target, "detours": detours}
    passed = report.reaches_target and len(seq) <= bound and detours == 0
    if ida_check:
        try:
            opt = solve_idastar(inst, budget).opt_length
            extra["ida_opt"] = opt
            passed = passed and opt <= len(seq)
        except BudgetExceeded as exc:
            extra["ida_opt"] = f"budget exceeded after {exc.expanded} states"
    params = {"d": degree, "sigma": alphabet, "size": size, "seed": seed}
    return Row(params, bound, len(seq), passed, extra)


def _setcover_row(args) -> Row:
    phi, budget = args
    winst, roles = build_from_set_cover(phi)
    cover_opt = set_cover_bruteforce(phi)
    params = {"universe_size": phi.universe_size, "sets": [sorted(s) for s in phi.sets]}
    try:
        res = solve_weighted(winst, budget)
    except BudgetExceeded as exc:
        return Row(params, 2 * cover_opt, None, None, {"error": f"budget exceeded after {exc.expanded} states"})
    seq = cover_sequence(phi, optimal_cover(phi), winst, roles)
    seq_ok = validate(winst.instance, seq).reaches_target
    seq_w = sequence_weight(winst, seq)
    passed = res.opt_weight == 2 * cover_opt and seq_ok and seq_w == 2 * cover_opt
    extra = {"cover_opt": cover_opt, "cover_sequence_weight": seq_w, "cover_sequence_valid": seq_ok,
             "expanded": res.expanded_states}
    return Row(params, 2 * cover_opt, res.opt_weight, passed, extra)


def _barrier51_row(args) -> Row:
    p, q, seed, greedy = args
    inst, ann = gen_local_opt_barrier(p, q)
    seq = constructive_sequence_51(inst, ann)
    ok = validate(inst, seq).reaches_target
    outer_only = all(ann.regions[norm_edge(*e)] == "outer" for e in seq)
    locally = bool(is_locally_optimal(inst, seq))
    extra = {
        "n": inst.n,
        "total": total(inst),
        "outer_only": outer_only,
        "locally_optimal": locally,
        "inner_cycle_violations": len(inner_cycle_violations(inst, ann)),
        "floor": locally_optimal_floor(p, q),
    }
    passed = ok and len(seq) == p * q * q and outer_only and not locally
    if greedy:
        g = greedy_locally_optimal(inst, seed=seed)
        g_ok = validate(inst, g.sequence).reaches_target
        g_local = bool(is_locally_optimal(inst, g.sequence))
        extra.update(greedy_length=g.length, greedy_valid=g_ok, greedy_locally_optimal=g_local)
        passed = passed and g_ok and g_local
    return Row({"p": p, "q": q}, p * q * q, len(seq), passed, extra)


def _barrier52_row(args) -> Row:
    p, q, budget = args
    inst = gen_ratio_barrier(p, q)
    floor = ratio_floor(p, q)
    tot = total(inst)
    try:
        res = solve_bfs(inst, budget)
    except BudgetExceeded as exc:
        return Row({"p": p, "q": q}, floor, None, None, {"total": tot, "error": f"budget exceeded after {exc.expanded} states"})
    ok = validate(inst, res.witness).reaches_target
    cyc = cycle_algorithm(inst)
    extra = {"total": tot, "cycle_length": cyc.length, "witness_valid": ok}
    passed = tot == p * q and res.opt_length >= floor and ok
    return Row({"p": p, "q": q}, floor, res.opt_length, passed, extra)


def _approx_row(args) -> Row:
    inst, index, budget = args
    tot = total(inst)
    res = solve_bfs(inst, budget)
    ida = solve_idastar(inst, budget)
    cyc = cycle_algorithm(inst)
    cyc_ok = validate(inst, cyc.sequence).reaches_target
    below_twice_total = tot == 0 or cyc.length < 2 * tot
    extra = {
        "n": inst.n,
        "total": tot,
        "opt": res.opt_length,
        "ida_opt": ida.opt_length,
        "witnesses_valid": validate(inst, res.witness).reaches_target and validate(inst, ida.witness).reaches_target,
        "cycle_valid": cyc_ok,
        "cycle_below_twice_total": below_twice_total,
        "cycle_locally_optimal": bool(is_locally_optimal(inst, cyc.sequence)),
        "ratio": None if res.opt_length == 0 else cyc.length / res.opt_length,
    }
    passed = (
        res.opt_length == ida.opt_length
        and extra["witnesses_valid"]
        and cyc_ok
        and below_twice_total
        and cyc.length <= 4 * res.opt_length
    )
    return Row({"trial": index, "n": inst.n}, 4 * res.opt_length, cyc.length, passed, extra)


def _run(worker, tasks, jobs: int) -> list[Row]:
    if jobs <= 1:
        return [worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, tasks))


# Suites ---------------------------------------------------------------------


# The reduced instances are far beyond exhaustive search; IDA* gets a small
# budget of its own and the row reports when it runs out.
IDA_CHECK_BUDGET = 200_000


def completeness(
    degrees=(2, 4), alphabets=(1, 2), sizes=(2, 3), seed: int = 1, budget: int = IDA_CHECK_BUDGET, jobs: int = 1
) -> list[Row]:
    """Completeness sequences on planted label-cover instances.

    A side needs at least ``d`` vertices, so sizes below the degree are
    raised to it.  The ``d=2, |Sigma|=1`` row at the smallest size also runs
    IDA* on the reduced instance.
    """
    tasks = []
    for d in degrees:
        for s in alphabets:
            for size in sorted({max(m, d) for m in sizes}):
                row_seed = seed * 1_000_003 + d * 10_007 + s * 101 + size
                ida = d == 2 and s == 1 and size == min(sizes)
                tasks.append((d, s, size, row_seed, budget, ida))
    return _run(_completeness_row, tasks, jobs)


def setcover_equivalence(max_universe: int = 5, max_sets: int = 4, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> list[Row]:
    instances = [EXAMPLE_SET_COVER, *enumerate_set_cover_instances(max_universe, max_sets)]
    return _run(_setcover_row, [(phi, budget) for phi in instances], jobs)


def barrier_51(pairs=((4, 2), (6, 3), (8, 4)), seed: int = 0, jobs: int = 1) -> list[Row]:
    return _run(_barrier51_row, [(p, q, seed, (p, q) == (4, 2)) for p, q in pairs], jobs)


def barrier_52(pairs=((2, 2), (3, 2), (2, 3)), budget: int = DEFAULT_BUDGET, jobs: int = 1) -> list[Row]:
    return _run(_barrier52_row, [(p, q, budget) for p, q in pairs], jobs)


def approx_ratio(trials: int = 500, n_max: int = 8, seed: int = 1, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> list[Row]:
    corpus = random_corpus(trials, n_max, seed)
    return _run(_approx_row, [(inst, i, budget) for i, inst in enumerate(corpus)], jobs)


SUITES = {
    "completeness": completeness,
    "setcover-equivalence": setcover_equivalence,
    "barrier-51": barrier_51,
    "barrier-52": barrier_52,
    "approx-ratio": approx_ratio,
}
