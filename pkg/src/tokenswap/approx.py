"""Polynomial-time swap sequences: the cycle algorithm and a greedy baseline."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .core import (
    BudgetExceeded,
    Instance,
    SwapSequence,
    distance_sum,
    half_total_lower_bound,
    permutation_cycles,
)


@dataclass(frozen=True)
class ApproxResult:
    sequence: SwapSequence
    length: int
    lower_bound: int

    @property
    def ratio(self) -> float | None:
        """Length over the half-total lower bound; ``None`` when the bound is 0."""
        return self.length / self.lower_bound if self.lower_bound else None


def cycle_algorithm(instance: Instance) -> ApproxResult:
    """Resolve the start->target permutation one cycle at a time.

    For a cycle ``c[0] -> c[1] -> ... -> c[l-1] -> c[0]`` and ``j`` running
    from ``l-1`` down to ``1``, the token on ``c[j-1]`` is bubbled along a
    shortest path to ``c[j]`` and the token it displaced from ``c[j]`` is
    bubbled back along the same path to ``c[j-1]``.  Tokens met on the path
    end up where they were, so each cycle is settled without disturbing the
    rest.  The sequence is shorter than ``2 * total(instance)``.
    """
    graph = instance.graph
    swaps = []
    for cycle in permutation_cycles(instance):
        for j in range(len(cycle) - 1, 0, -1):
            path = graph.shortest_path(cycle[j - 1], cycle[j])
            forward = list(zip(path, path[1:]))
            # The last forward swap already put the displaced token on
            # path[-2]; walk it the rest of the way back.
            back = [(b, a) for a, b in reversed(forward[:-1])]
            swaps.extend(forward)
            swaps.extend(back)
    seq = SwapSequence(swaps)
    return ApproxResult(seq, len(seq), half_total_lower_bound(instance))


def greedy_locally_optimal(
    instance: Instance, seed: int = 0, step_budget: int | None = None
) -> ApproxResult:
    """Happy swaps first, otherwise a random swap that keeps local optimality.

    A happy swap lowers the sum of token distances; the one with the largest
    drop is taken (ties by edge order).  Without one, a seeded random swap is
    drawn among those that do not push both tokens further away and do not
    undo the previous swap.  Raises ``BudgetExceeded`` after ``step_budget``
    swaps (default ``50 n^2``).
    """
    n = instance.n
    if step_budget is None:
        step_budget = 50 * n * n
    rng = random.Random(seed)
    edges = instance.graph.sorted_edges
    td = instance.target_dist
    occ = list(instance.start.occupant)
    s = distance_sum(instance, occ)
    swaps = []
    last = None
    while s:
        if len(swaps) >= step_budget:
            raise BudgetExceeded(f"greedy did not reach the target within {step_budget} swaps")
        best_k, best_delta = None, 0
        allowed = []
        for k, (u, v) in enumerate(edges):
            a, b = occ[u], occ[v]
            da = td[a][v] - td[a][u]
            db = td[b][u] - td[b][v]
            if da + db < best_delta:
                best_k, best_delta = k, da + db
            if not (da > 0 and db > 0) and k != last:
                allowed.append(k)
        if best_k is None:
            if not allowed:
                raise BudgetExceeded("greedy has no admissible swap left")
            best_k = rng.choice(allowed)
        u, v = edges[best_k]
        a, b = occ[u], occ[v]
        s += td[a][v] - td[a][u] + td[b][u] - td[b][v]
        occ[u], occ[v] = b, a
        swaps.append((u, v))
        last = best_k
    seq = SwapSequence(swaps)
    return ApproxResult(seq, len(seq), half_total_lower_bound(instance))
