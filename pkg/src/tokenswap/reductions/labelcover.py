"""Label cover -> token swapping gadget construction.

Each label-cover vertex ``v`` becomes a gadget: a base vertex, one
assignment vertex per incident constraint and one label path per symbol
(``d-1`` edges on the left side, ``2d-1`` on the right).  Every satisfying
label pair of a constraint adds a satisfaction path of ``d`` edges between
the far ends of the two matching label paths.  The tokens on ``asg(x, y)``
and ``asg(y, x)`` want to trade places; every other token stays put.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ..core import (
    Configuration,
    Graph,
    Instance,
    SwapSequence,
    TokenSwapError,
    all_swap_paths,
    norm_edge,
)


class NotRegular(TokenSwapError, ValueError):
    pass


class SidesUnequal(TokenSwapError, ValueError):
    pass


class NotSimple(TokenSwapError, ValueError):
    pass


class InvalidConstraint(TokenSwapError, ValueError):
    pass


class NotFullySatisfying(TokenSwapError, ValueError):
    pass


class OddDegree(TokenSwapError, ValueError):
    pass


class ClaimViolation(TokenSwapError, AssertionError):
    """A position invariant of the completeness sequence failed during emission."""


@dataclass(frozen=True)
class LabelCoverInstance:
    left_count: int
    right_count: int
    alphabet_size: int
    edges: tuple[tuple[int, int], ...]
    constraints: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(x), int(y)) for x, y in self.edges))
        object.__setattr__(self, "constraints", tuple(tuple(int(s) for s in c) for c in self.constraints))
        if len(self.constraints) != len(self.edges):
            raise InvalidConstraint("one constraint table per edge is required")
        for e, table in zip(self.edges, self.constraints):
            if len(table) != self.alphabet_size or any(
                not 0 <= s < self.alphabet_size for s in table
            ):
                raise InvalidConstraint(f"constraint on {e} is not a total function on the alphabet")
        for x, y in self.edges:
            if not (0 <= x < self.left_count and 0 <= y < self.right_count):
                raise NotSimple(f"edge {(x, y)} refers to a missing vertex")

    def neighbours_of_left(self, x: int) -> list[int]:
        return sorted(y for xx, y in self.edges if xx == x)

    def neighbours_of_right(self, y: int) -> list[int]:
        return sorted(x for x, yy in self.edges if yy == y)


@dataclass(frozen=True)
class Labelling:
    left: tuple[int, ...]
    right: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))


def validate_label_cover(phi: LabelCoverInstance) -> int:
    """Return the common degree ``d`` of a simple, regular, balanced instance."""
    if len(set(phi.edges)) != len(phi.edges):
        raise NotSimple("repeated constraint edge")
    if phi.left_count != phi.right_count:
        raise SidesUnequal(f"|X| = {phi.left_count} but |Y| = {phi.right_count}")
    degrees = [0] * (phi.left_count + phi.right_count)
    for x, y in phi.edges:
        degrees[x] += 1
        degrees[phi.left_count + y] += 1
    if not degrees or len(set(degrees)) != 1 or degrees[0] == 0:
        raise NotRegular(f"degrees {sorted(set(degrees))} are not a single positive value")
    return degrees[0]


def satisfied_fraction(phi: LabelCoverInstance, labelling: Labelling) -> Fraction:
    good = sum(
        table[labelling.left[x]] == labelling.right[y]
        for (x, y), table in zip(phi.edges, phi.constraints)
    )
    return Fraction(good, len(phi.edges))


def optimal_fraction(phi: LabelCoverInstance) -> Fraction:
    """Best satisfied fraction over all labellings (exhaustive)."""
    best = Fraction(0)
    sigma = range(phi.alphabet_size)
    for left in itertools.product(sigma, repeat=phi.left_count):
        for right in itertools.product(sigma, repeat=phi.right_count):
            best = max(best, satisfied_fraction(phi, Labelling(left, right)))
            if best == 1:
                return best
    return best


def amplify_degree(phi: LabelCoverInstance, c: int) -> LabelCoverInstance:
    """``c`` copies of every vertex and ``c*c`` copies of every constraint."""
    edges, tables = [], []
    for (x, y), table in zip(phi.edges, phi.constraints):
        for a in range(c):
            for b in range(c):
                edges.append((x * c + a, y * c + b))
                tables.append(table)
    return LabelCoverInstance(
        phi.left_count * c, phi.right_count * c, phi.alphabet_size, tuple(edges), tuple(tables)
    )


# Gadgets are keyed ("x", i) for left vertices and ("y", j) for right ones.
Gadget = tuple[str, int]


@dataclass(frozen=True)
class GadgetMap:
    """Where every piece of the construction landed in the reduced graph.

    ``roles[v]`` is one of ``("base", side, i)``, ``("assignment", side, i,
    other)``, ``("label", side, i, symbol, position)`` or ``("satisfaction",
    x, sx, y, sy, position)``.  ``regions`` tags each edge ``"gadget"`` or
    ``"sat"``.
    """

    degree: int
    alphabet_size: int
    left_count: int
    right_count: int
    base: dict
    asg: dict
    asg_order: dict
    label_path: dict
    sat_path: dict
    roles: tuple
    regions: dict

    def endpoint(self, g: Gadget, symbol: int) -> int:
        return self.label_path[(g, symbol)][-1]

    def assignment_side(self, vertex: int) -> str | None:
        role = self.roles[vertex]
        return role[1] if role[0] == "assignment" else None


def build_from_label_cover(phi: LabelCoverInstance) -> tuple[Instance, GadgetMap]:
    d = validate_label_cover(phi)
    sigma = phi.alphabet_size
    roles: list[tuple] = []
    edges: list[tuple[int, int]] = []
    regions: dict[tuple[int, int], str] = {}

    def new_vertex(role) -> int:
        roles.append(role)
        return len(roles) - 1

    def link(u: int, v: int, region: str):
        e = norm_edge(u, v)
        if e not in regions:
            regions[e] = region
            edges.append(e)

    base, asg, asg_order, label_path = {}, {}, {}, {}
    gadgets = [("x", i) for i in range(phi.left_count)] + [("y", j) for j in range(phi.right_count)]
    for g in gadgets:
        side, i = g
        others = phi.neighbours_of_left(i) if side == "x" else phi.neighbours_of_right(i)
        other_side = "y" if side == "x" else "x"
        b = base[g] = new_vertex(("base", side, i))
        order = []
        for w in others:
            a = asg[(g, (other_side, w))] = new_vertex(("assignment", side, i, w))
            link(a, b, "gadget")
            order.append(a)
        asg_order[g] = tuple(order)
        length = d - 1 if side == "x" else 2 * d - 1
        for s in range(sigma):
            path = [b]
            for pos in range(1, length + 1):
                path.append(new_vertex(("label", side, i, s, pos)))
                link(path[-2], path[-1], "gadget")
            label_path[(g, s)] = tuple(path)

    sat_path = {}
    for e_idx, ((x, y), table) in enumerate(zip(phi.edges, phi.constraints)):
        for sx in range(sigma):
            sy = table[sx]
            path = [label_path[(("x", x), sx)][-1]]
            for pos in range(1, d):
                path.append(new_vertex(("satisfaction", x, sx, y, sy, pos)))
            path.append(label_path[(("y", y), sy)][-1])
            for a, b in zip(path, path[1:]):
                link(a, b, "sat")
            sat_path[(e_idx, sx)] = tuple(path)

    n = len(roles)
    target = list(range(n))
    for x, y in phi.edges:
        a, b = asg[(("x", x), ("y", y))], asg[(("y", y), ("x", x))]
        target[a], target[b] = b, a
    instance = Instance(Graph(n, edges), Configuration.identity(n), Configuration(tuple(target)))
    gm = GadgetMap(
        degree=d,
        alphabet_size=sigma,
        left_count=phi.left_count,
        right_count=phi.right_count,
        base=base,
        asg=asg,
        asg_order=asg_order,
        label_path=label_path,
        sat_path=sat_path,
        roles=tuple(roles),
        regions=regions,
    )
    return instance, gm


def expected_vertex_count(phi: LabelCoverInstance) -> int:
    """Closed-form vertex count of ``build_from_label_cover(phi)``."""
    d = validate_label_cover(phi)
    s = phi.alphabet_size
    left = phi.left_count * (1 + d + s * (d - 1))
    right = phi.right_count * (1 + d + s * (2 * d - 1))
    return left + right + len(phi.edges) * s * (d - 1)


def completeness_length_bound(d: int, vertex_count: int) -> Fraction:
    """``(13/4 d^2 + d) |X u Y|``."""
    return (Fraction(13, 4) * d * d + d) * vertex_count


class _Board:
    """Mutable token placement used while emitting a sequence."""

    def __init__(self, instance: Instance):
        self.graph = instance.graph
        self.occ = list(instance.start.occupant)
        self.pos = list(instance.start.placement)
        self.swaps: list[tuple[int, int]] = []

    def swap(self, u: int, v: int):
        if not self.graph.has_edge(u, v):
            raise ClaimViolation(f"construction asked for non-edge {(u, v)}")
        a, b = self.occ[u], self.occ[v]
        self.occ[u], self.occ[v] = b, a
        self.pos[a], self.pos[b] = v, u
        self.swaps.append((u, v))

    def bubble(self, path):
        for u, v in zip(path, path[1:]):
            self.swap(u, v)


def completeness_sequence(
    phi: LabelCoverInstance,
    labelling: Labelling,
    gm: GadgetMap,
    instance: Instance | None = None,
    pairing: str = "reversal",
    check_claims: bool = True,
) -> SwapSequence:
    """The four-stage swap sequence for a fully satisfying labelling.

    Stage 2 exchanges assignment vertices pairwise through the base vertex.
    ``pairing="literal"`` pairs ``k`` with ``d-k``; ``"reversal"`` pairs ``k``
    with ``d-k+1``, which is what the later stages need (the literal pairing
    does not reach the target).  Two position invariants are checked while
    emitting and raise ``ClaimViolation``:

    * before a token crosses into ``Gad(y)`` it sits on the far end of its
      home label path;
    * the ``k``-th token leaving ``Gad(y)`` starts ``k-1`` steps from the
      far end of ``lab(y, label(y))``.

    ``check_claims=False`` skips them, so a broken pairing can be handed to
    the validator instead.
    """
    d = gm.degree
    if d % 2:
        raise OddDegree(f"degree {d} is odd; only even degrees are supported")
    if satisfied_fraction(phi, labelling) != 1:
        raise NotFullySatisfying("labelling does not satisfy every constraint")
    if pairing not in ("literal", "reversal"):
        raise ValueError(f"unknown pairing {pairing!r}")
    if instance is None:
        instance, _ = build_from_label_cover(phi)
    board = _Board(instance)
    target_occ = instance.target.occupant
    lam = {("x", i): s for i, s in enumerate(labelling.left)}
    lam.update({("y", j): s for j, s in enumerate(labelling.right)})
    edge_index = {e: k for k, e in enumerate(phi.edges)}
    left = [("x", i) for i in range(phi.left_count)]
    right = [("y", j) for j in range(phi.right_count)]

    def sat(x: Gadget, y: Gadget) -> tuple[int, ...]:
        return gm.sat_path[(edge_index[(x[1], y[1])], lam[x])]

    # Stage 1 / 3: push the gadget's own assignment tokens onto its chosen path.
    def load(g: Gadget):
        b = gm.base[g]
        lab = gm.label_path[(g, lam[g])]
        for k, a in enumerate(gm.asg_order[g], start=1):
            board.swap(a, b)
            board.bubble(lab[: d - k + 1])

    for g in left:
        load(g)

    for g in left:
        b = gm.base[g]
        order = gm.asg_order[g]
        for k in range(1, d // 2 + 1):
            other = d - k if pairing == "literal" else d - k + 1
            board.swap(order[k - 1], b)
            board.swap(order[other - 1], b)
            board.swap(order[k - 1], b)

    for g in right:
        load(g)

    for y in right:
        b = gm.base[y]
        order = gm.asg_order[y]
        lab_y = gm.label_path[(y, lam[y])]
        for k in range(1, d + 1):
            dest = order[d - k]
            token = target_occ[dest]
            x = ("x", gm.roles[dest][3])
            end_x = gm.endpoint(x, lam[x])
            if check_claims and board.pos[token] != end_x:
                raise ClaimViolation(
                    f"stage 4(a), {y} k={k}: token {token} on {board.pos[token]}, expected {end_x}"
                )
            board.bubble(sat(x, y))
            board.bubble(lab_y[::-1])
            board.swap(b, dest)
        for k in range(1, d + 1):
            token = instance.start.occupant[order[k - 1]]
            at = len(lab_y) - 1 - (k - 1)
            if check_claims and board.pos[token] != lab_y[at]:
                raise ClaimViolation(
                    f"stage 4(b), {y} k={k}: token {token} on {board.pos[token]}, "
                    f"expected {lab_y[at]}"
                )
            board.bubble(lab_y[at:])
            home = instance.target.placement[token]
            x = ("x", gm.roles[home][2])
            board.bubble(sat(x, y)[::-1])
            board.bubble(gm.label_path[(x, lam[x])][::-1])
            board.swap(gm.base[x], home)
    return SwapSequence(board.swaps)


@dataclass(frozen=True)
class DetourReport:
    kinds: tuple[str, ...]
    det_left: int
    det_right: int

    @property
    def detour_count(self) -> int:
        return self.det_left + self.det_right


def classify_detour_tokens(instance: Instance, gm: GadgetMap, seq) -> DetourReport:
    """Mark assignment tokens whose simplified trajectory exceeds ``4d`` edges.

    Trajectories are simplified by cutting closed sub-walks; they run from a
    token's start to wherever ``seq`` leaves it.
    """
    paths = all_swap_paths(instance, seq)
    kinds = []
    det = {"x": 0, "y": 0}
    for t in range(instance.n):
        side = gm.assignment_side(instance.start.placement[t])
        if side is None:
            kinds.append("non-assignment")
        elif len(paths[t]) - 1 > 4 * gm.degree:
            kinds.append("detour")
            det[side] += 1
        else:
            kinds.append("non-detour")
    return DetourReport(tuple(kinds), det["x"], det["y"])
