import pytest

from tokenswap.approx import cycle_algorithm, greedy_locally_optimal
from tokenswap.barriers import (
    BadParams,
    constructive_sequence_51,
    gen_local_opt_barrier,
    gen_ratio_barrier,
    inner_cycle_violations,
    locally_optimal_floor,
    ratio_floor,
)
from tokenswap.core import half_total_lower_bound, is_locally_optimal, norm_edge, total, validate
from tokenswap.exact import solve_bfs, solve_idastar


class TestLocalOptBarrier:
    def test_vertex_count_4_2(self):
        inst, _ = gen_local_opt_barrier(4, 2)
        assert inst.n == 16

    def test_even_token_targets(self):
        inst, _ = gen_local_opt_barrier(4, 2)
        assert inst.target.placement[0] == 4
        inst, _ = gen_local_opt_barrier(8, 4)
        assert inst.target.placement[0] == 8

    def test_odd_token_targets(self):
        inst, ann = gen_local_opt_barrier(4, 2)
        j = 2  # first vertex of segment 1
        assert ann.segment[j] == 1 and inst.target.placement[j] == (j - 4) % 8

    @pytest.mark.parametrize("p,q", [(3, 2), (2, 2), (4, 1)])
    def test_bad_params(self, p, q):
        with pytest.raises(BadParams):
            gen_local_opt_barrier(p, q)

    @pytest.mark.parametrize("p,q", [(4, 2), (6, 3), (8, 4), (4, 3)])
    def test_structure(self, p, q):
        inst, ann = gen_local_opt_barrier(p, q)
        m = p * q
        assert inst.n == m + m * (2 * q - 3)
        assert len(ann.inner_paths) == m
        assert all(len(path) - 1 == 2 * q - 2 for path in ann.inner_paths)
        assert sum(1 for r in ann.regions.values() if r == "outer") == m
        for t in range(inst.n):
            s, f = inst.start.placement[t], inst.target.placement[t]
            assert ann.inner_cycle[s] == ann.inner_cycle[f]
        assert ann.parity(0) == "even" and ann.parity(1) == "odd"

    @pytest.mark.parametrize("p,q", [(4, 2), (6, 3), (8, 4)])
    def test_constructive_sequence(self, p, q):
        inst, ann = gen_local_opt_barrier(p, q)
        seq = constructive_sequence_51(inst, ann)
        assert len(seq) == p * q * q
        assert validate(inst, seq).reaches_target
        assert all(ann.regions[norm_edge(*e)] == "outer" for e in seq)
        assert not is_locally_optimal(inst, seq)

    @pytest.mark.parametrize("p,q", [(4, 2), (6, 3)])
    def test_inner_cycles_hold_shortest_paths(self, p, q):
        inst, ann = gen_local_opt_barrier(p, q)
        assert inner_cycle_violations(inst, ann) == []

    def test_greedy_4_2(self):
        inst, _ = gen_local_opt_barrier(4, 2)
        for seed in range(3):
            r = greedy_locally_optimal(inst, seed=seed)
            assert validate(inst, r.sequence).reaches_target
            assert is_locally_optimal(inst, r.sequence)
            assert r.length >= half_total_lower_bound(inst)


class TestFloors:
    def test_locally_optimal_floor(self):
        # 4pq^2 - 5pq - 8q^2, clamped at zero
        assert locally_optimal_floor(4, 2) == 0
        assert locally_optimal_floor(6, 3) == 54
        assert locally_optimal_floor(8, 4) == 224
        assert locally_optimal_floor(1, 1) == 0
        assert locally_optimal_floor(20, 10) == 8000 - 1000 - 800

    def test_ratio_floor(self):
        assert ratio_floor(2, 2) == 3
        assert ratio_floor(3, 2) == 6
        assert ratio_floor(2, 3) == 5


class TestRatioBarrier:
    @pytest.mark.parametrize("p,q", [(2, 2), (3, 2), (2, 3), (3, 3), (4, 2)])
    def test_total_and_floor(self, p, q):
        inst = gen_ratio_barrier(p, q)
        assert inst.n == p * q
        assert total(inst) == p * q
        assert half_total_lower_bound(inst) == (p * q + 1) // 2
        opt = solve_bfs(inst).opt_length
        assert ratio_floor(p, q) <= opt <= cycle_algorithm(inst).length
        assert solve_idastar(inst).opt_length == opt

    def test_c4_exchange(self):
        inst = gen_ratio_barrier(2, 2)
        assert inst.target.placement[0] == 2 and inst.target.placement[2] == 0

    def test_bad_params(self):
        with pytest.raises(BadParams):
            gen_ratio_barrier(1, 3)
