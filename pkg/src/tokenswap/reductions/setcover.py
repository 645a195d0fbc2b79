"""Set cover -> 0/1-weighted token swapping.

Element ``u`` becomes two vertices ``2u`` and ``2u+1`` whose weight-0 tokens
want to trade places; set ``i`` becomes vertex ``2|U| + i`` holding a fixed
weight-1 token, joined to both vertices of each of its elements.  The two
element vertices are never adjacent, so every exchange has to borrow a set
vertex, and borrowing one costs 2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..core import (
    Configuration,
    Graph,
    Instance,
    SwapSequence,
    TokenSwapError,
    WeightedInstance,
)


class Infeasible(TokenSwapError, ValueError):
    pass


class NotACover(TokenSwapError, ValueError):
    pass


class TooLarge(TokenSwapError, ValueError):
    pass


@dataclass(frozen=True)
class SetCoverInstance:
    universe_size: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        sets = tuple(frozenset(int(u) for u in s) for s in self.sets)
        for i, s in enumerate(sets):
            if any(not 0 <= u < self.universe_size for u in s):
                raise Infeasible(f"set {i} has an element outside 0..{self.universe_size - 1}")
        object.__setattr__(self, "sets", sets)

    def check_feasible(self):
        covered = frozenset().union(*self.sets)
        missing = set(range(self.universe_size)) - covered
        if missing:
            raise Infeasible(f"elements {sorted(missing)} are in no set")

    def is_cover(self, chosen) -> bool:
        return frozenset().union(*(self.sets[i] for i in chosen)) == frozenset(range(self.universe_size))


# Roles: ("element", u, 1) for v_u^1, ("element", u, 2) for v_u^2, ("set", i).
def element_vertex(u: int, copy: int) -> int:
    return 2 * u + (copy - 1)


def build_from_set_cover(phi: SetCoverInstance) -> tuple[WeightedInstance, tuple]:
    phi.check_feasible()
    m = phi.universe_size
    n = 2 * m + len(phi.sets)
    roles = []
    for u in range(m):
        roles += [("element", u, 1), ("element", u, 2)]
    roles += [("set", i) for i in range(len(phi.sets))]
    edges = []
    for i, s in enumerate(phi.sets):
        for u in sorted(s):
            edges.append((element_vertex(u, 1), 2 * m + i))
            edges.append((element_vertex(u, 2), 2 * m + i))
    target = list(range(n))
    for u in range(m):
        target[2 * u], target[2 * u + 1] = 2 * u + 1, 2 * u
    instance = Instance(Graph(n, edges), Configuration.identity(n), Configuration(tuple(target)))
    weights = [0] * (2 * m) + [1] * len(phi.sets)
    return WeightedInstance(instance, weights), tuple(roles)


def prune_cover(phi: SetCoverInstance, chosen) -> list[int]:
    """Drop sets without a private element until every kept set has one."""
    kept = list(dict.fromkeys(chosen))
    if not phi.is_cover(kept):
        raise NotACover(f"sets {kept} do not cover the universe")
    changed = True
    while changed:
        changed = False
        for i in kept:
            others = frozenset().union(*(phi.sets[j] for j in kept if j != i))
            if phi.sets[i] <= others:
                kept.remove(i)
                changed = True
                break
    return kept


def cover_sequence(phi: SetCoverInstance, chosen, winst: WeightedInstance, roles) -> SwapSequence:
    """Swap sequence of weight ``2 * |pruned cover|`` that solves the reduced instance.

    For each kept set ``S_i`` with private element ``a``: park ``t_a^1`` on
    the set vertex, use it to ferry every other unfinished element pair
    through the set vertex, then finish ``a`` and put ``t_i`` back.  Only the
    first and the last of these swaps touch the weight-1 token.
    """
    kept = prune_cover(phi, chosen)
    m = phi.universe_size
    done: set[int] = set()
    swaps = []
    for i in kept:
        hub = 2 * m + i
        others = frozenset().union(*(phi.sets[j] for j in kept if j != i))
        a = min(phi.sets[i] - others)
        a1, a2 = element_vertex(a, 1), element_vertex(a, 2)
        swaps.append((a2, hub))
        for u in sorted(phi.sets[i] - {a} - done):
            u1, u2 = element_vertex(u, 1), element_vertex(u, 2)
            swaps += [(u2, hub), (hub, u1), (hub, u2)]
            done.add(u)
        swaps += [(hub, a1), (hub, a2)]
        done.add(a)
    return SwapSequence(swaps)


def set_cover_bruteforce(phi: SetCoverInstance, max_sets: int = 20) -> int:
    """Size of a smallest cover, by enumerating subsets in order of size."""
    k = len(phi.sets)
    if k > max_sets:
        raise TooLarge(f"{k} sets exceed the enumeration limit of {max_sets}")
    phi.check_feasible()
    full = (1 << phi.universe_size) - 1
    masks = [sum(1 << u for u in s) for s in phi.sets]
    for size in range(k + 1):
        for combo in itertools.combinations(masks, size):
            acc = 0
            for mask in combo:
                acc |= mask
            if acc == full:
                return size
    raise Infeasible("no cover exists")


def optimal_cover(phi: SetCoverInstance) -> list[int]:
    """Lexicographically first minimum cover (set indices)."""
    size = set_cover_bruteforce(phi)
    for combo in itertools.combinations(range(len(phi.sets)), size):
        if phi.is_cover(combo):
            return list(combo)
    raise Infeasible("no cover exists")


def enumerate_set_cover_instances(max_universe: int, max_sets: int):
    """Every feasible set system with ``1..max_universe`` elements and
    ``1..max_sets`` sets, once per isomorphism class.

    Sets are unordered (a multiset of subsets, empty and repeated sets
    allowed) and elements are identified up to relabelling.
    """
    for m in range(1, max_universe + 1):
        full = (1 << m) - 1
        perms = list(itertools.permutations(range(m)))
        relabel = [[sum(1 << p[u] for u in range(m) if mask >> u & 1) for mask in range(full + 1)] for p in perms]
        for k in range(1, max_sets + 1):
            seen = set()
            for masks in itertools.combinations_with_replacement(range(full + 1), k):
                acc = 0
                for mask in masks:
                    acc |= mask
                if acc != full:
                    continue
                canon = min(tuple(sorted(table[mask] for mask in masks)) for table in relabel)
                if canon in seen:
                    continue
                seen.add(canon)
                yield SetCoverInstance(m, tuple(frozenset(u for u in range(m) if mask >> u & 1) for mask in canon))
