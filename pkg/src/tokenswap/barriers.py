"""The two barrier families: an outer cycle with inner shortcut paths, and a plain cycle.

Outer vertices are ``0..pq-1`` in clockwise order.  In the local-optimality
family the interior vertices of inner path ``P_j`` (from ``v_j`` to
``v_{j+2q}``) follow, grouped by ``j`` and listed from ``v_j`` outwards.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Configuration,
    Graph,
    Instance,
    SwapSequence,
    TokenSwapError,
    norm_edge,
)


class BadParams(TokenSwapError, ValueError):
    pass


@dataclass(frozen=True)
class BarrierAnnotations:
    p: int
    q: int
    segment: tuple[int, ...]          # per outer vertex
    inner_cycle: tuple[int, ...]      # per vertex, in [0, 2q)
    inner_paths: tuple[tuple[int, ...], ...]  # P_j as vertex lists
    regions: dict                     # edge -> "outer" | "inner"

    def parity(self, segment: int) -> str:
        return "even" if segment % 2 == 0 else "odd"

    def is_outer(self, v: int) -> bool:
        return v < self.p * self.q

    def cycle_vertices(self, j: int) -> list[int]:
        return [v for v, c in enumerate(self.inner_cycle) if c == j]


def gen_local_opt_barrier(p: int, q: int) -> tuple[Instance, BarrierAnnotations]:
    """Outer cycle of ``pq`` vertices plus ``pq`` inner paths of ``2q-2`` edges.

    Tokens in even segments want to move ``2q`` steps clockwise, tokens in
    odd segments ``2q`` steps counter-clockwise; inner tokens stay.
    """
    if p < 4 or p % 2 or q < 2:
        raise BadParams(f"need even p >= 4 and q >= 2, got p={p}, q={q}")
    m = p * q
    interior = 2 * q - 3
    n = m + m * interior
    regions = {}
    for j in range(m):
        regions[norm_edge(j, (j + 1) % m)] = "outer"
    inner_paths = []
    inner_cycle = [j % (2 * q) for j in range(m)] + [0] * (m * interior)
    for j in range(m):
        mids = [m + j * interior + k for k in range(interior)]
        path = [j, *mids, (j + 2 * q) % m]
        for v in mids:
            inner_cycle[v] = j % (2 * q)
        for a, b in zip(path, path[1:]):
            regions[norm_edge(a, b)] = "inner"
        inner_paths.append(tuple(path))
    target = list(range(n))
    segment = tuple(j // q for j in range(m))
    for j in range(m):
        shift = 2 * q if segment[j] % 2 == 0 else -2 * q
        target[j] = (j + shift) % m
    instance = Instance(Graph(n, regions), Configuration.identity(n), Configuration(tuple(target)))
    ann = BarrierAnnotations(p, q, segment, tuple(inner_cycle), tuple(inner_paths), regions)
    return instance, ann


def constructive_sequence_51(instance: Instance, ann: BarrierAnnotations) -> SwapSequence:
    """Two clockwise sweeps; each odd token is bubbled ``q`` steps counter-clockwise per sweep.

    Uses outer-cycle edges only and has length exactly ``p q^2``.
    """
    m = ann.p * ann.q
    pos = list(instance.start.placement)
    occ = list(instance.start.occupant)
    swaps = []
    for _ in range(2):
        for j in range(m):
            if ann.segment[j] % 2 == 0:
                continue
            t = instance.start.occupant[j]
            for _ in range(ann.q):
                u = pos[t]
                v = (u - 1) % m
                other = occ[v]
                occ[u], occ[v] = other, t
                pos[t], pos[other] = v, u
                swaps.append((u, v))
    return SwapSequence(swaps)


def locally_optimal_floor(p: int, q: int) -> int:
    """``max(0, 4pq^2 - 5pq - 8q^2)``."""
    return max(0, 4 * p * q * q - 5 * p * q - 8 * q * q)


def gen_ratio_barrier(p: int, q: int) -> Instance:
    """Cycle of ``pq`` vertices; the token on ``v_{iq}`` targets ``v_{(i+1)q}``."""
    if p < 2 or q < 2:
        raise BadParams(f"need p >= 2 and q >= 2, got p={p}, q={q}")
    m = p * q
    edges = [(j, (j + 1) % m) for j in range(m)]
    target = list(range(m))
    for i in range(p):
        target[i * q] = ((i + 1) * q) % m
    return Instance(Graph(m, edges), Configuration.identity(m), Configuration(tuple(target)))


def ratio_floor(p: int, q: int) -> int:
    """``2pq - 2q - p + 1``, a lower bound on OPT for ``gen_ratio_barrier(p, q)``."""
    return 2 * p * q - 2 * q - p + 1


def inner_cycle_violations(instance: Instance, ann: BarrierAnnotations) -> list[tuple[int, int, int]]:
    """Triples ``(a, b, c)`` breaking ``dist(a, b) < dist(c, b)``.

    ``a`` and ``b`` share an inner cycle and ``c`` is a neighbour of ``a``
    outside that cycle.  An empty result means every shortest path between
    two vertices of an inner cycle stays on it.
    """
    dist = instance.dist
    adj = instance.graph.adjacency
    bad = []
    for j in range(2 * ann.q):
        members = ann.cycle_vertices(j)
        for a in members:
            outside = [c for c in adj[a] if ann.inner_cycle[c] != j]
            for b in members:
                for c in outside:
                    if not dist[a][b] < dist[c][b]:
                        bad.append((a, b, c))
    return bad
