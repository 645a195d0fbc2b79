"""Optimal solvers over the configuration space.

These are the ground truth for every small-scale check in the package, so
they favour plain, auditable search over cleverness.  Witnesses are
deterministic: neighbours are always generated in sorted edge order and the
first parent that reaches a state keeps it.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np

from .core import (
    BudgetExceeded,
    Instance,
    SwapSequence,
    WeightedInstance,
    distance_sum,
)

DEFAULT_BUDGET = 10_000_000
# n**n must fit in an int64 for the mixed-radix state code.
MAX_RADIX_N = 12


@dataclass(frozen=True)
class SolveResult:
    opt_length: int
    witness: SwapSequence
    expanded_states: int
    opt_weight: Fraction | None = None


def _trivial(instance: Instance) -> bool:
    return instance.start == instance.target


def solve_bfs(instance: Instance, state_budget: int = DEFAULT_BUDGET) -> SolveResult:
    """Breadth-first search from the start configuration."""
    if _trivial(instance):
        return SolveResult(0, SwapSequence(), 0)
    if 0 < instance.n <= MAX_RADIX_N and instance.graph.edges:
        return _bfs_levels(instance, state_budget)
    return _bfs_python(instance, state_budget)


def _bfs_levels(instance: Instance, budget: int) -> SolveResult:
    # Level-synchronous BFS over int64 state codes.  Candidates of one level
    # are laid out parent-major, edge-minor, so the first occurrence of a code
    # is exactly the parent a FIFO queue would have assigned.
    n = instance.n
    edges = instance.graph.sorted_edges
    eu = np.array([u for u, _ in edges])
    ev = np.array([v for _, v in edges])
    radix = np.array([n**i for i in range(n)], dtype=np.int64)
    step = radix[eu] - radix[ev]

    start = np.array(instance.start.occupant, dtype=np.int64)
    goal = int(np.array(instance.target.occupant, dtype=np.int64) @ radix)
    frontier = start[None, :]
    codes = frontier @ radix
    seen = np.sort(codes)
    levels: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = [(codes, None, None)]
    expanded = 0
    n_edges = len(edges)

    while len(codes):
        if expanded + len(codes) > budget:
            raise BudgetExceeded(f"BFS would expand more than {budget} states", expanded)
        expanded += len(codes)
        delta = (frontier[:, ev] - frontier[:, eu]) * step
        cand = (codes[:, None] + delta).ravel()
        uniq, first = np.unique(cand, return_index=True)
        fresh = ~np.isin(uniq, seen, assume_unique=True)
        uniq, first = uniq[fresh], first[fresh]
        order = np.argsort(first, kind="stable")
        codes, first = uniq[order], first[order]
        parent, edge = first // n_edges, first % n_edges
        levels.append((codes, parent, edge))
        seen = np.union1d(seen, codes)
        hit = np.nonzero(codes == goal)[0]
        if len(hit):
            return SolveResult(
                len(levels) - 1, _trace_levels(levels, int(hit[0]), edges), expanded
            )
        frontier = (codes[:, None] // radix) % n
    raise AssertionError("target unreachable in a connected instance")


def _trace_levels(levels, index: int, edges) -> SwapSequence:
    swaps = []
    for codes, parent, edge in reversed(levels[1:]):
        swaps.append(edges[int(edge[index])])
        index = int(parent[index])
    return SwapSequence(reversed(swaps))


def _bfs_python(instance: Instance, budget: int) -> SolveResult:
    edges = instance.graph.sorted_edges
    start = bytes(instance.start.occupant)
    goal = bytes(instance.target.occupant)
    parent: dict[bytes, tuple[bytes, int] | None] = {start: None}
    queue = deque([start])
    expanded = 0
    while queue:
        state = queue.popleft()
        if expanded >= budget:
            raise BudgetExceeded(f"BFS would expand more than {budget} states", expanded)
        expanded += 1
        occ = bytearray(state)
        for k, (u, v) in enumerate(edges):
            occ[u], occ[v] = occ[v], occ[u]
            child = bytes(occ)
            occ[u], occ[v] = occ[v], occ[u]
            if child in parent:
                continue
            parent[child] = (state, k)
            if child == goal:
                return SolveResult(*_trace_parents(parent, child, edges), expanded)
            queue.append(child)
    raise AssertionError("target unreachable in a connected instance")


def _trace_parents(parent, state, edges) -> tuple[int, SwapSequence]:
    swaps = []
    while parent[state] is not None:
        state, k = parent[state]
        swaps.append(edges[k])
    return len(swaps), SwapSequence(reversed(swaps))


def solve_idastar(instance: Instance, state_budget: int = DEFAULT_BUDGET) -> SolveResult:
    """Iterative deepening A* with h = ceil(sum of token distances / 2).

    Each swap changes the distance sum by at most two, so h never
    overestimates.  A per-iteration transposition table prunes states
    already reached at no greater depth; this keeps optimality because a
    state's subtree only depends on the state and the remaining bound.
    """
    if _trivial(instance):
        return SolveResult(0, SwapSequence(), 0)
    edges = instance.graph.sorted_edges
    td = instance.target_dist
    occ = list(instance.start.occupant)
    path: list[int] = []
    expanded = 0
    bound = (distance_sum(instance, occ) + 1) // 2

    def search(g: int, s: int, last: int, table: dict) -> int:
        # Returns -1 when the goal is found, else the smallest f above bound.
        nonlocal expanded
        if s == 0:
            return -1
        key = bytes(occ)
        seen = table.get(key)
        if seen is not None and seen <= g:
            return math.inf
        table[key] = g
        if expanded >= state_budget:
            raise BudgetExceeded(f"IDA* would expand more than {state_budget} states", expanded)
        expanded += 1
        best = math.inf
        g1 = g + 1
        for k, (u, v) in enumerate(edges):
            if k == last:
                continue
            a, b = occ[u], occ[v]
            ta, tb = td[a], td[b]
            s1 = s + ta[v] - ta[u] + tb[u] - tb[v]
            f = g1 + (s1 + 1) // 2
            if f > bound:
                if f < best:
                    best = f
                continue
            occ[u], occ[v] = b, a
            path.append(k)
            r = search(g1, s1, k, table)
            if r == -1:
                return -1
            path.pop()
            occ[u], occ[v] = a, b
            if r < best:
                best = r
        return best

    s0 = distance_sum(instance, occ)
    while True:
        r = search(0, s0, -1, {})
        if r == -1:
            return SolveResult(len(path), SwapSequence(edges[k] for k in path), expanded)
        if r == math.inf:
            raise AssertionError("target unreachable in a connected instance")
        bound = r


def _integer_weights(weights) -> tuple[list[int], int]:
    denom = reduce(math.lcm, (Fraction(w).denominator for w in weights), 1)
    return [int(Fraction(w) * denom) for w in weights], denom


def solve_weighted(
    winst: WeightedInstance,
    state_budget: int = DEFAULT_BUDGET,
    heuristic: bool = True,
) -> SolveResult:
    """Cheapest swap sequence where a swap costs the weights of both tokens.

    Best-first search with closed-set bookkeeping: a state is re-opened only
    when a strictly cheaper path to it is found, so zero-cost swaps cannot
    loop.  With ``heuristic=False`` this is plain uniform-cost search.  The
    default adds an admissible estimate made of two parts:

    * every token pays its weight once per step it still has to travel;
    * a token already home that sits on every route some misplaced token
      could take has to leave and come back, so it pays twice its weight.

    The second term is the larger of the most expensive cheapest route over
    misplaced tokens and a packing bound: misplaced tokens walled in by
    pairwise disjoint sets of home tokens need a distinct one from each set.
    """
    inst = winst.instance
    n = inst.n
    w, denom = _integer_weights(winst.weights)
    if _trivial(inst):
        return SolveResult(0, SwapSequence(), 0, Fraction(0))
    edges = inst.graph.sorted_edges
    adj = inst.graph.adjacency
    td = inst.target_dist
    tgt = inst.target.placement
    heavy = [t for t in range(n) if w[t] > 0]
    layout_cache: dict[tuple, tuple] = {}

    def layout_data(layout: tuple[int, ...]) -> tuple:
        data = layout_cache.get(layout)
        if data is not None:
            return data
        cost = [0] * n
        for t, v in zip(heavy, layout):
            if tgt[t] == v:
                cost[v] = 2 * w[t]
        table = [_vertex_cost_dijkstra(adj, cost, s) for s in range(n)]
        # Components of the graph with blocked vertices removed, and for
        # each one the blocked vertices on its boundary.
        comp = [-1] * n
        fence = []
        for s in range(n):
            if cost[s] or comp[s] >= 0:
                continue
            c = len(fence)
            comp[s] = c
            stack, ring = [s], set()
            while stack:
                u = stack.pop()
                for x in adj[u]:
                    if cost[x]:
                        ring.add(x)
                    elif comp[x] < 0:
                        comp[x] = c
                        stack.append(x)
            fence.append(frozenset(ring))
        data = (table, cost, comp, fence)
        layout_cache[layout] = data
        return data

    def estimate(occ) -> int:
        if not heuristic:
            return 0
        h1 = 0
        for v, t in enumerate(occ):
            if w[t]:
                h1 += w[t] * td[t][v]
        if not heavy:
            return h1
        pos = [0] * n
        for v, t in enumerate(occ):
            pos[t] = v
        table, cost, comp, fence = layout_data(tuple(pos[t] for t in heavy))
        h2 = 0
        needs = set()
        for v, t in enumerate(occ):
            g = tgt[t]
            if g != v:
                c = table[v][g]
                if c > h2:
                    h2 = c
                if comp[v] != comp[g]:
                    needs.add(fence[comp[v]])
                    if comp[g] >= 0:
                        needs.add(fence[comp[g]])
        # Misplaced tokens stuck behind disjoint fences force distinct home
        # tokens to step aside and return.
        if len(needs) > 1:
            used: set[int] = set()
            packed = 0
            for ring in sorted(needs, key=lambda r: (len(r), sorted(r))):
                if ring.isdisjoint(used):
                    used |= ring
                    packed += min(cost[x] for x in ring)
            h2 = max(h2, packed)
        return h1 + h2

    start = tuple(inst.start.occupant)
    goal = tuple(inst.target.occupant)
    best_g = {start: 0}
    parent: dict[tuple, tuple[tuple, int] | None] = {start: None}
    # Equal f: prefer states closer to the goal, then plain distance sum,
    # then insertion order.
    counter = 0
    h0 = estimate(start)
    heap = [(h0, h0, distance_sum(inst, start), 0, 0, start)]
    expanded = 0
    while heap:
        g, state = heapq.heappop(heap)[4:]
        if g > best_g[state]:
            continue
        if state == goal:
            length, seq = _trace_parents(parent, state, edges)
            return SolveResult(length, seq, expanded, Fraction(g, denom))
        if expanded >= state_budget:
            raise BudgetExceeded(
                f"weighted search would expand more than {state_budget} states", expanded
            )
        expanded += 1
        occ = list(state)
        for k, (u, v) in enumerate(edges):
            a, b = occ[u], occ[v]
            g1 = g + w[a] + w[b]
            occ[u], occ[v] = b, a
            child = tuple(occ)
            occ[u], occ[v] = a, b
            if g1 < best_g.get(child, math.inf):
                best_g[child] = g1
                parent[child] = (state, k)
                h = estimate(child)
                counter += 1
                heapq.heappush(heap, (g1 + h, h, distance_sum(inst, child), counter, g1, child))
    raise AssertionError("target unreachable in a connected instance")


def _vertex_cost_dijkstra(adj, cost: list[int], source: int) -> list[int]:
    """Cheapest cost from ``source`` to every vertex, paying ``cost[x]`` on entering ``x``."""
    dist = [math.inf] * len(adj)
    dist[source] = 0
    heap = [(0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for x in adj[u]:
            nd = d + cost[x]
            if nd < dist[x]:
                dist[x] = nd
                heapq.heappush(heap, (nd, x))
    return dist
