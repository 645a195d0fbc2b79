"""Instance model, swap application, validation and distance-based measurements.

Vertices and tokens share the index space ``0..n-1``.  A configuration is
stored as a token -> vertex tuple; the inverse (vertex -> token) is derived
once and cached.  Everything here is immutable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

Edge = tuple[int, int]


class TokenSwapError(Exception):
    """Base class for all errors raised by this package."""


class InvalidGraph(TokenSwapError, ValueError):
    pass


class InvalidConfiguration(TokenSwapError, ValueError):
    pass


class NonEdge(TokenSwapError, ValueError):
    def __init__(self, edge, index: int | None = None):
        self.edge = edge
        self.index = index
        where = "" if index is None else f" at swap index {index}"
        super().__init__(f"{tuple(edge)} is not an edge of the graph{where}")


class NotAWalk(TokenSwapError, ValueError):
    pass


class Disconnected(TokenSwapError, ValueError):
    pass


class UnlabeledEdge(TokenSwapError, KeyError):
    pass


class BudgetExceeded(TokenSwapError, RuntimeError):
    def __init__(self, message: str, expanded: int = 0):
        self.expanded = expanded
        super().__init__(message)


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..vertex_count-1``."""

    vertex_count: int
    edges: frozenset[Edge]

    def __init__(self, vertex_count: int, edges: Iterable[Sequence[int]]):
        if vertex_count < 0:
            raise InvalidGraph("vertex_count must be non-negative")
        normed = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise InvalidGraph(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise InvalidGraph(f"edge {(u, v)} has an endpoint outside 0..{vertex_count - 1}")
            e = norm_edge(u, v)
            if e in normed:
                raise InvalidGraph(f"duplicate edge {e}")
            normed.add(e)
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "edges", frozenset(normed))

    @property
    def n(self) -> int:
        return self.vertex_count

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    @cached_property
    def distances(self) -> tuple[tuple[int, ...], ...]:
        """All-pairs hop distances; ``-1`` marks unreachable pairs."""
        return tuple(self._bfs(s) for s in range(self.vertex_count))

    def _bfs(self, source: int) -> tuple[int, ...]:
        dist = [-1] * self.vertex_count
        dist[source] = 0
        queue = deque([source])
        adj = self.adjacency
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return tuple(dist)

    def shortest_path(self, source: int, sink: int) -> list[int]:
        """A shortest path from ``source`` to ``sink``.

        Ties are broken towards the lexicographically smallest predecessor,
        which makes the result a pure function of the graph.
        """
        dist = self.distances[sink]
        if dist[source] < 0:
            raise Disconnected(f"no path between {source} and {sink}")
        # Walk from source, always stepping to the smallest neighbour that is
        # one hop closer to the sink.
        path = [source]
        v = source
        while v != sink:
            v = min(w for w in self.adjacency[v] if dist[w] == dist[v] - 1)
            path.append(v)
        return path

    def is_connected(self) -> bool:
        return self.vertex_count == 0 or all(d >= 0 for d in self.distances[0])


@dataclass(frozen=True)
class Configuration:
    """A placement of tokens: ``placement[t]`` is the vertex holding token ``t``."""

    placement: tuple[int, ...]

    def __post_init__(self):
        placement = tuple(int(v) for v in self.placement)
        n = len(placement)
        if sorted(placement) != list(range(n)):
            raise InvalidConfiguration("placement is not a bijection onto 0..n-1")
        object.__setattr__(self, "placement", placement)

    @classmethod
    def identity(cls, n: int) -> Configuration:
        return cls(tuple(range(n)))

    @classmethod
    def from_occupants(cls, occupants: Sequence[int]) -> Configuration:
        placement = [0] * len(occupants)
        for v, t in enumerate(occupants):
            placement[t] = v
        return cls(tuple(placement))

    @cached_property
    def occupant(self) -> tuple[int, ...]:
        occ = [0] * len(self.placement)
        for t, v in enumerate(self.placement):
            occ[v] = t
        return tuple(occ)

    def __len__(self) -> int:
        return len(self.placement)

    def vertex_of(self, token: int) -> int:
        return self.placement[token]

    def token_at(self, vertex: int) -> int:
        return self.occupant[vertex]


@dataclass(frozen=True)
class Instance:
    """A token swapping instance (graph, start and target configurations).

    Distances are computed eagerly; an instance in which some token cannot
    reach its target is rejected.
    """

    graph: Graph
    start: Configuration
    target: Configuration

    def __post_init__(self):
        n = self.graph.vertex_count
        if len(self.start) != n or len(self.target) != n:
            raise InvalidConfiguration(
                f"configurations must place exactly {n} tokens "
                f"(got {len(self.start)} and {len(self.target)})"
            )
        dist = self.graph.distances
        for t in range(n):
            if dist[self.start.placement[t]][self.target.placement[t]] < 0:
                raise Disconnected(
                    f"token {t}: start {self.start.placement[t]} and target "
                    f"{self.target.placement[t]} are in different components"
                )

    @classmethod
    def from_lists(cls, n: int, edges, start: Sequence[int], target: Sequence[int]) -> Instance:
        return cls(Graph(n, edges), Configuration(tuple(start)), Configuration(tuple(target)))

    @property
    def n(self) -> int:
        return self.graph.vertex_count

    @property
    def dist(self) -> tuple[tuple[int, ...], ...]:
        return self.graph.distances

    @cached_property
    def target_dist(self) -> tuple[tuple[int, ...], ...]:
        """``target_dist[t][v]``: distance from vertex ``v`` to token ``t``'s target."""
        d = self.graph.distances
        return tuple(d[self.target.placement[t]] for t in range(self.n))


@dataclass(frozen=True)
class WeightedInstance:
    instance: Instance
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        weights = tuple(Fraction(w) for w in self.weights)
        if len(weights) != self.instance.n:
            raise InvalidConfiguration("one weight per token is required")
        if any(w < 0 for w in weights):
            raise InvalidConfiguration("weights must be non-negative")
        object.__setattr__(self, "weights", weights)

    def is_zero_one(self) -> bool:
        return all(w in (0, 1) for w in self.weights)


@dataclass(frozen=True)
class SwapSequence:
    swaps: tuple[Edge, ...] = ()

    def __init__(self, swaps: Iterable[Sequence[int]] = ()):
        object.__setattr__(self, "swaps", tuple((int(s[0]), int(s[1])) for s in swaps))

    def __len__(self) -> int:
        return len(self.swaps)

    def __iter__(self):
        return iter(self.swaps)

    def __getitem__(self, i):
        return self.swaps[i]

    def __add__(self, other: SwapSequence) -> SwapSequence:
        return SwapSequence(self.swaps + tuple(other))


def _as_swaps(seq) -> tuple[Edge, ...]:
    return seq.swaps if isinstance(seq, SwapSequence) else tuple(seq)


def apply(config: Configuration, swap: Sequence[int], graph: Graph) -> Configuration:
    """Exchange the tokens on the two endpoints of ``swap``."""
    u, v = swap
    if not graph.has_edge(u, v):
        raise NonEdge((u, v))
    occ = list(config.occupant)
    occ[u], occ[v] = occ[v], occ[u]
    return Configuration.from_occupants(occ)


@dataclass(frozen=True)
class ValidationReport:
    reaches_target: bool
    final_config: Configuration
    length: int


def run(instance: Instance, seq) -> list[int]:
    """Apply ``seq`` from the start configuration; return the final occupant list."""
    graph = instance.graph
    occ = list(instance.start.occupant)
    for i, (u, v) in enumerate(_as_swaps(seq)):
        if not graph.has_edge(u, v):
            raise NonEdge((u, v), index=i)
        occ[u], occ[v] = occ[v], occ[u]
    return occ


def validate(instance: Instance, seq) -> ValidationReport:
    occ = run(instance, seq)
    final = Configuration.from_occupants(occ)
    return ValidationReport(
        reaches_target=final == instance.target,
        final_config=final,
        length=len(_as_swaps(seq)),
    )


def bubble(start_vertex: int, path: Sequence[int], graph: Graph | None = None) -> SwapSequence:
    """Swaps that carry the token on ``path[0]`` to ``path[-1]``.

    Every token met on the way is shifted one step back towards ``path[0]``.
    """
    if not path or path[0] != start_vertex:
        raise NotAWalk(f"path must begin at {start_vertex}")
    if graph is not None:
        for a, b in zip(path, path[1:]):
            if not graph.has_edge(a, b):
                raise NotAWalk(f"{a} and {b} are not adjacent")
    return SwapSequence(zip(path, path[1:]))


def total(instance: Instance) -> int:
    """Sum over tokens of the distance from start to target."""
    d = instance.dist
    s, f = instance.start.placement, instance.target.placement
    return sum(d[s[t]][f[t]] for t in range(instance.n))


def half_total_lower_bound(instance: Instance) -> int:
    return (total(instance) + 1) // 2


def sequence_weight(winst: WeightedInstance, seq) -> Fraction:
    inst = winst.instance
    w = winst.weights
    occ = list(inst.start.occupant)
    cost = Fraction(0)
    for i, (u, v) in enumerate(_as_swaps(seq)):
        if not inst.graph.has_edge(u, v):
            raise NonEdge((u, v), index=i)
        cost += w[occ[u]] + w[occ[v]]
        occ[u], occ[v] = occ[v], occ[u]
    return cost


@dataclass(frozen=True)
class LocalOptimality:
    locally_optimal: bool
    first_violation: int | None = None

    def __bool__(self) -> bool:
        return self.locally_optimal


def is_locally_optimal(instance: Instance, seq) -> LocalOptimality:
    """Check that no swap moves both of its tokens strictly away from their targets."""
    td = instance.target_dist
    graph = instance.graph
    occ = list(instance.start.occupant)
    for i, (u, v) in enumerate(_as_swaps(seq)):
        if not graph.has_edge(u, v):
            raise NonEdge((u, v), index=i)
        a, b = occ[u], occ[v]
        if td[a][v] > td[a][u] and td[b][u] > td[b][v]:
            return LocalOptimality(False, i)
        occ[u], occ[v] = b, a
    return LocalOptimality(True)


def token_walk(instance: Instance, seq, token: int) -> list[int]:
    """Vertices visited by ``token`` while ``seq`` is applied (with repeats)."""
    graph = instance.graph
    occ = list(instance.start.occupant)
    here = instance.start.placement[token]
    walk = [here]
    for i, (u, v) in enumerate(_as_swaps(seq)):
        if not graph.has_edge(u, v):
            raise NonEdge((u, v), index=i)
        if here == u:
            here = v
            walk.append(here)
        elif here == v:
            here = u
            walk.append(here)
        occ[u], occ[v] = occ[v], occ[u]
    return walk


def remove_closed_subwalks(walk: Sequence[int]) -> list[int]:
    """Cut out closed sub-walks, always at the leftmost repeated vertex.

    Equivalent to repeatedly finding the first index ``j`` whose vertex
    already occurred at some ``i < j`` and deleting ``walk[i+1..j]``.
    """
    path: list[int] = []
    index: dict[int, int] = {}
    for v in walk:
        if v in index:
            cut = index[v]
            for w in path[cut + 1:]:
                del index[w]
            del path[cut + 1:]
        else:
            index[v] = len(path)
            path.append(v)
    return path


def swap_path(instance: Instance, seq, token: int) -> list[int]:
    return remove_closed_subwalks(token_walk(instance, seq, token))


def all_swap_paths(instance: Instance, seq) -> list[list[int]]:
    """``swap_path`` for every token in one pass over ``seq``."""
    graph = instance.graph
    occ = list(instance.start.occupant)
    walks = [[instance.start.placement[t]] for t in range(instance.n)]
    for i, (u, v) in enumerate(_as_swaps(seq)):
        if not graph.has_edge(u, v):
            raise NonEdge((u, v), index=i)
        a, b = occ[u], occ[v]
        walks[a].append(v)
        walks[b].append(u)
        occ[u], occ[v] = b, a
    return [remove_closed_subwalks(w) for w in walks]


def permutation_cycles(instance: Instance) -> list[list[int]]:
    """Cycles of the vertex permutation ``v -> target(token starting on v)``.

    Cycles are listed by smallest vertex, each rotated to start there; fixed
    points appear as 1-cycles.
    """
    n = instance.n
    occ = instance.start.occupant
    tgt = instance.target.placement
    seen = [False] * n
    cycles = []
    for v in range(n):
        if seen[v]:
            continue
        cycle = []
        w = v
        while not seen[w]:
            seen[w] = True
            cycle.append(w)
            w = tgt[occ[w]]
        cycles.append(cycle)
    return cycles


def region_swap_counts(instance: Instance, seq, regions: Mapping[Edge, Hashable]) -> dict:
    counts = {label: 0 for label in regions.values()}
    for i, (u, v) in enumerate(_as_swaps(seq)):
        e = norm_edge(u, v)
        if not instance.graph.has_edge(u, v):
            raise NonEdge((u, v), index=i)
        if e not in regions:
            raise UnlabeledEdge(f"swap {i} on {e} has no region label")
        counts[regions[e]] += 1
    return counts


def distance_sum(instance: Instance, occupants: Sequence[int]) -> int:
    """Sum of token distances to target for the configuration ``occupants``."""
    td = instance.target_dist
    return sum(td[t][v] for v, t in enumerate(occupants))


def ceil_half(x: int) -> int:
    return -(-x // 2)


__all__ = [
    "BudgetExceeded", "Configuration", "Disconnected", "Edge", "Graph", "Instance",
    "InvalidConfiguration", "InvalidGraph", "LocalOptimality", "NonEdge", "NotAWalk",
    "SwapSequence", "TokenSwapError", "UnlabeledEdge", "ValidationReport",
    "WeightedInstance", "all_swap_paths", "apply", "bubble", "ceil_half", "distance_sum",
    "half_total_lower_bound", "is_locally_optimal", "norm_edge", "permutation_cycles",
    "region_swap_counts", "remove_closed_subwalks", "run", "sequence_weight", "swap_path",
    "token_walk", "total", "validate",
]
