from fractions import Fraction

import pytest
from hypothesis import given, settings

from tokenswap.core import (
    Configuration,
    Disconnected,
    Graph,
    Instance,
    InvalidConfiguration,
    InvalidGraph,
    NonEdge,
    NotAWalk,
    SwapSequence,
    UnlabeledEdge,
    WeightedInstance,
    apply,
    bubble,
    half_total_lower_bound,
    is_locally_optimal,
    norm_edge,
    permutation_cycles,
    region_swap_counts,
    remove_closed_subwalks,
    run,
    sequence_weight,
    swap_path,
    total,
    validate,
)

from .conftest import instances, instances_with_sequence


P3 = Graph(3, [(0, 1), (1, 2)])
C3 = Graph(3, [(0, 1), (1, 2), (0, 2)])


class TestGraph:
    def test_rejects_self_loop(self):
        with pytest.raises(InvalidGraph):
            Graph(2, [(1, 1)])

    def test_rejects_duplicate(self):
        with pytest.raises(InvalidGraph):
            Graph(2, [(0, 1), (1, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(InvalidGraph):
            Graph(2, [(0, 2)])

    def test_distances_path(self):
        assert P3.distances == ((0, 1, 2), (1, 0, 1), (2, 1, 0))

    def test_shortest_path_prefers_small_vertex(self):
        g = Graph(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
        assert g.shortest_path(0, 3) == [0, 1, 3]

    def test_disconnected_instance_rejected(self):
        with pytest.raises(Disconnected):
            Instance.from_lists(3, [(0, 1)], [0, 1, 2], [2, 1, 0])

    def test_disconnected_but_fixed_tokens_ok(self):
        inst = Instance.from_lists(3, [(0, 1)], [0, 1, 2], [1, 0, 2])
        assert total(inst) == 2


class TestConfiguration:
    def test_not_bijection(self):
        with pytest.raises(InvalidConfiguration):
            Configuration((0, 0))

    def test_occupant_inverse(self):
        c = Configuration((2, 0, 1))
        assert c.occupant == (1, 2, 0)
        assert Configuration.from_occupants(c.occupant) == c

    def test_wrong_size(self):
        with pytest.raises(InvalidConfiguration):
            Instance(P3, Configuration.identity(2), Configuration.identity(2))

    def test_negative_weight(self, p2_swapped):
        with pytest.raises(InvalidConfiguration):
            WeightedInstance(p2_swapped, [1, -1])


class TestApply:
    def test_single_edge_exchange(self):
        g = Graph(2, [(0, 1)])
        assert apply(Configuration((0, 1)), (0, 1), g) == Configuration((1, 0))

    def test_other_tokens_unchanged(self):
        out = apply(Configuration((0, 1, 2)), (1, 2), C3)
        assert out.occupant == (0, 2, 1)

    def test_non_edge(self):
        with pytest.raises(NonEdge):
            apply(Configuration((0, 1, 2)), (0, 2), P3)

    @given(instances_with_sequence())
    def test_involution(self, case):
        inst, seq = case
        for e in seq:
            once = apply(inst.start, e, inst.graph)
            assert apply(once, e, inst.graph) == inst.start


class TestValidate:
    def test_identity_empty(self):
        inst = Instance.from_lists(2, [(0, 1)], [0, 1], [0, 1])
        r = validate(inst, [])
        assert r.reaches_target and r.length == 0

    def test_p2(self, p2_swapped):
        assert validate(p2_swapped, [(0, 1)]).reaches_target
        assert validate(p2_swapped, [(0, 1)]).length == 1
        assert not validate(p2_swapped, []).reaches_target

    def test_non_edge_index(self):
        inst = Instance.from_lists(3, P3.edges, [0, 1, 2], [0, 1, 2])
        with pytest.raises(NonEdge) as err:
            validate(inst, [(0, 1), (1, 0), (0, 2)])
        assert err.value.index == 2

    @given(instances_with_sequence())
    def test_every_prefix_is_a_bijection(self, case):
        inst, seq = case
        for k in range(len(seq) + 1):
            occ = run(inst, seq[:k])
            assert sorted(occ) == list(range(inst.n))


class TestBubble:
    def test_empty(self):
        assert len(bubble(0, [0])) == 0

    def test_p3(self):
        assert list(bubble(0, [0, 1, 2], P3)) == [(0, 1), (1, 2)]

    def test_shift_semantics(self):
        inst = Instance.from_lists(3, P3.edges, [0, 1, 2], [2, 0, 1])
        r = validate(inst, bubble(0, [0, 1, 2], P3))
        assert r.reaches_target
        # b@0, c@1, a@2
        assert r.final_config.occupant == (1, 2, 0)

    def test_not_a_walk(self):
        with pytest.raises(NotAWalk):
            bubble(0, [0, 2], P3)

    @given(instances(min_n=2))
    def test_moves_lead_token(self, inst):
        path = inst.graph.shortest_path(0, inst.n - 1)
        seq = bubble(path[0], path, inst.graph)
        assert len(seq) == len(path) - 1
        occ = run(inst, seq)
        assert occ[path[-1]] == inst.start.occupant[path[0]]


class TestTotal:
    def test_identity(self):
        inst = Instance.from_lists(3, P3.edges, [0, 1, 2], [0, 1, 2])
        assert total(inst) == 0
        assert half_total_lower_bound(inst) == 0

    def test_p2(self, p2_swapped):
        assert total(p2_swapped) == 2
        assert half_total_lower_bound(p2_swapped) == 1

    @given(instances())
    def test_zero_iff_solved(self, inst):
        assert (total(inst) == 0) == (inst.start == inst.target)


class TestSequenceWeight:
    def test_zero_weights(self, p2_swapped):
        w = WeightedInstance(p2_swapped, [0, 0])
        assert sequence_weight(w, [(0, 1), (0, 1), (0, 1)]) == 0

    def test_one_and_zero(self, p2_swapped):
        assert sequence_weight(WeightedInstance(p2_swapped, [1, 0]), [(0, 1)]) == 1

    def test_rational(self, p2_swapped):
        w = WeightedInstance(p2_swapped, [Fraction(1, 3), Fraction(1, 2)])
        assert sequence_weight(w, [(0, 1)]) == Fraction(5, 6)
        assert not w.is_zero_one()

    def test_tracks_configuration(self):
        inst = Instance.from_lists(3, P3.edges, [0, 1, 2], [0, 1, 2])
        w = WeightedInstance(inst, [1, 0, 0])
        # token 0 moves to 1, then the 1-2 swap carries it again.
        assert sequence_weight(w, [(0, 1), (1, 2)]) == 2


class TestLocalOptimality:
    def test_empty(self, p2_swapped):
        assert is_locally_optimal(p2_swapped, []).locally_optimal

    def test_violation_index(self):
        inst = Instance.from_lists(3, P3.edges, [0, 1, 2], [0, 1, 2])
        r = is_locally_optimal(inst, [(0, 1)])
        assert not r.locally_optimal and r.first_violation == 0

    def test_one_token_moving_away_is_allowed(self, p2_swapped):
        inst = Instance.from_lists(3, P3.edges, [0, 1, 2], [1, 0, 2])
        assert is_locally_optimal(inst, [(0, 1)])


class TestSwapPath:
    def test_never_swapped(self, p2_swapped):
        inst = Instance.from_lists(3, P3.edges, [0, 1, 2], [0, 1, 2])
        assert swap_path(inst, [(0, 1)], 2) == [2]

    def test_triangle_loop(self):
        inst = Instance.from_lists(3, C3.edges, [0, 1, 2], [0, 1, 2])
        # token 0 walks 0 -> 1 -> 0 -> 2
        assert swap_path(inst, [(0, 1), (0, 1), (0, 2)], 0) == [0, 2]

    def test_removal_rule(self):
        assert remove_closed_subwalks([0, 1, 2, 1, 3]) == [0, 1, 3]
        assert remove_closed_subwalks([0, 1, 0, 2]) == [0, 2]
        assert remove_closed_subwalks([5]) == [5]

    def test_leftmost_first(self):
        # Cutting 1..1 first then 0..0 leaves [0, 4].
        assert remove_closed_subwalks([0, 1, 2, 1, 0, 4]) == [0, 4]

    @given(instances_with_sequence(max_len=30))
    def test_simple_path_with_right_ends(self, case):
        inst, seq = case
        final = run(inst, seq)
        for t in range(inst.n):
            path = swap_path(inst, seq, t)
            assert len(set(path)) == len(path)
            assert path[0] == inst.start.placement[t]
            assert final[path[-1]] == t
            for a, b in zip(path, path[1:]):
                assert inst.graph.has_edge(a, b)


class TestPermutationCycles:
    def test_identity(self):
        inst = Instance.from_lists(4, [(0, 1), (1, 2), (2, 3)], range(4), range(4))
        assert permutation_cycles(inst) == [[0], [1], [2], [3]]

    def test_p2(self, p2_swapped):
        assert permutation_cycles(p2_swapped) == [[0, 1]]

    def test_c3(self, c3_rotation):
        assert permutation_cycles(c3_rotation) == [[0, 1, 2]]

    @given(instances())
    def test_partition_and_composition(self, inst):
        cycles = permutation_cycles(inst)
        flat = sorted(v for c in cycles for v in c)
        assert flat == list(range(inst.n))
        for c in cycles:
            assert c[0] == min(c)
            for i, v in enumerate(c):
                token = inst.start.occupant[v]
                assert inst.target.placement[token] == c[(i + 1) % len(c)]
        assert [c[0] for c in cycles] == sorted(c[0] for c in cycles)


class TestRegionCounts:
    def test_empty(self):
        inst = Instance.from_lists(3, P3.edges, range(3), range(3))
        assert region_swap_counts(inst, [], {(0, 1): "a", (1, 2): "b"}) == {"a": 0, "b": 0}

    def test_all_sat(self):
        inst = Instance.from_lists(3, P3.edges, range(3), range(3))
        regions = {(0, 1): "sat", (1, 2): "sat"}
        assert region_swap_counts(inst, [(0, 1), (2, 1), (1, 2)], regions) == {"sat": 3}

    def test_unlabeled(self):
        inst = Instance.from_lists(3, P3.edges, range(3), range(3))
        with pytest.raises(UnlabeledEdge):
            region_swap_counts(inst, [(1, 2)], {(0, 1): "a"})

    @settings(max_examples=50)
    @given(instances_with_sequence())
    def test_counts_partition(self, case):
        inst, seq = case
        regions = {e: e[0] % 2 for e in inst.graph.edges}
        assert sum(region_swap_counts(inst, seq, regions).values()) == len(seq)


def test_swap_sequence_concat():
    a = SwapSequence([(0, 1)])
    b = SwapSequence([(1, 2)])
    assert list(a + b) == [(0, 1), (1, 2)]
    assert norm_edge(3, 1) == (1, 3)
