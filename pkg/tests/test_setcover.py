import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tokenswap.core import sequence_weight, validate
from tokenswap.exact import solve_weighted
from tokenswap.experiments import EXAMPLE_SET_COVER
from tokenswap.reductions.setcover import (
    Infeasible,
    NotACover,
    SetCoverInstance,
    TooLarge,
    build_from_set_cover,
    cover_sequence,
    enumerate_set_cover_instances,
    optimal_cover,
    prune_cover,
    set_cover_bruteforce,
)


def sc(m, *sets):
    return SetCoverInstance(m, tuple(frozenset(s) for s in sets))


class TestBuild:
    def test_example_vertex_count(self):
        winst, roles = build_from_set_cover(EXAMPLE_SET_COVER)
        assert winst.instance.n == 11
        assert winst.is_zero_one()
        assert len(roles) == 11

    def test_single_element(self):
        winst, roles = build_from_set_cover(sc(1, {0}))
        assert winst.instance.n == 3
        assert len(winst.instance.graph.edges) == 2
        assert roles == (("element", 0, 1), ("element", 0, 2), ("set", 0))

    def test_element_in_two_sets(self):
        winst, _ = build_from_set_cover(sc(1, {0}, {0}))
        g = winst.instance.graph
        for v in (0, 1):
            assert g.adjacency[v] == (2, 3)

    def test_infeasible(self):
        with pytest.raises(Infeasible):
            build_from_set_cover(sc(2, {0}))

    def test_element_out_of_range(self):
        with pytest.raises(Infeasible):
            sc(1, {3})


class TestBruteforce:
    def test_example(self):
        assert set_cover_bruteforce(EXAMPLE_SET_COVER) == 2
        assert optimal_cover(EXAMPLE_SET_COVER) == [0, 2]

    def test_small(self):
        assert set_cover_bruteforce(sc(1, {0})) == 1
        assert set_cover_bruteforce(sc(2, {0}, {1})) == 2

    def test_too_large(self):
        with pytest.raises(TooLarge):
            set_cover_bruteforce(sc(1, *([{0}] * 21)))


class TestCoverSequence:
    def test_example(self):
        winst, roles = build_from_set_cover(EXAMPLE_SET_COVER)
        seq = cover_sequence(EXAMPLE_SET_COVER, [0, 2], winst, roles)
        assert validate(winst.instance, seq).reaches_target
        assert sequence_weight(winst, seq) == 4

    def test_single(self):
        phi = sc(1, {0})
        winst, roles = build_from_set_cover(phi)
        seq = cover_sequence(phi, [0], winst, roles)
        assert validate(winst.instance, seq).reaches_target
        assert sequence_weight(winst, seq) == 2

    def test_redundant_cover_is_pruned(self):
        winst, roles = build_from_set_cover(EXAMPLE_SET_COVER)
        kept = prune_cover(EXAMPLE_SET_COVER, [0, 1, 2])
        assert kept == [0, 2]
        seq = cover_sequence(EXAMPLE_SET_COVER, [0, 1, 2], winst, roles)
        assert sequence_weight(winst, seq) == 2 * len(kept)

    def test_not_a_cover(self):
        winst, roles = build_from_set_cover(EXAMPLE_SET_COVER)
        with pytest.raises(NotACover):
            cover_sequence(EXAMPLE_SET_COVER, [0], winst, roles)

    @settings(max_examples=60, deadline=None)
    @given(st.data())
    def test_any_cover_weighs_twice_pruned_size(self, data):
        m = data.draw(st.integers(1, 5))
        sets = data.draw(st.lists(st.sets(st.integers(0, m - 1), min_size=1), min_size=1, max_size=5))
        sets.append(set(range(m)) - set().union(*sets) or {0})
        phi = sc(m, *sets)
        chosen = [i for i in range(len(sets)) if data.draw(st.booleans())] + [len(sets) - 1]
        if not phi.is_cover(chosen):
            chosen = list(range(len(sets)))
        winst, roles = build_from_set_cover(phi)
        seq = cover_sequence(phi, chosen, winst, roles)
        assert validate(winst.instance, seq).reaches_target
        assert sequence_weight(winst, seq) == 2 * len(prune_cover(phi, chosen))


class TestWeightedOptimum:
    def test_example(self):
        winst, _ = build_from_set_cover(EXAMPLE_SET_COVER)
        assert solve_weighted(winst).opt_weight == 4

    def test_single_element(self):
        winst, _ = build_from_set_cover(sc(1, {0}))
        assert solve_weighted(winst).opt_weight == 2

    @pytest.mark.parametrize("phi", list(enumerate_set_cover_instances(3, 3)), ids=str)
    def test_small_exhaustive(self, phi):
        winst, _ = build_from_set_cover(phi)
        assert solve_weighted(winst).opt_weight == 2 * set_cover_bruteforce(phi)


class TestEnumeration:
    def test_universe_one(self):
        # {0}; {0},{0}; {0},{}; ... for k <= 2: [{0}], [{},{0}], [{0},{0}]
        found = list(enumerate_set_cover_instances(1, 2))
        assert len(found) == 3

    def test_no_isomorphic_duplicates(self):
        found = list(enumerate_set_cover_instances(3, 3))
        keys = set()
        for phi in found:
            masks = [sum(1 << u for u in s) for s in phi.sets]
            canon = min(
                tuple(sorted(sum(1 << p[u] for u in range(phi.universe_size) if mask >> u & 1) for mask in masks))
                for p in itertools.permutations(range(phi.universe_size))
            )
            keys.add((phi.universe_size, canon))
            phi.check_feasible()
        assert len(keys) == len(found)
