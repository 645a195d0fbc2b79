import pytest
from hypothesis import given, settings

from tokenswap.approx import cycle_algorithm, greedy_locally_optimal
from tokenswap.core import BudgetExceeded, Instance, is_locally_optimal, total, validate
from tokenswap.exact import solve_bfs

from .conftest import instances


def test_cycle_p2(p2_swapped):
    r = cycle_algorithm(p2_swapped)
    assert r.length == 1 and r.lower_bound == 1 and r.ratio == 1


def test_cycle_c3_rotation(c3_rotation):
    r = cycle_algorithm(c3_rotation)
    assert validate(c3_rotation, r.sequence).reaches_target
    assert r.length == 2


def test_cycle_identity():
    inst = Instance.from_lists(3, [(0, 1), (1, 2)], range(3), range(3))
    r = cycle_algorithm(inst)
    assert r.length == 0 and r.ratio is None


def test_cycle_uses_bubble_out_and_back():
    # One 2-cycle at distance 3 on a path: 3 swaps forward, 2 back.
    inst = Instance.from_lists(4, [(0, 1), (1, 2), (2, 3)], range(4), [3, 1, 2, 0])
    r = cycle_algorithm(inst)
    assert list(r.sequence) == [(0, 1), (1, 2), (2, 3), (2, 1), (1, 0)]
    assert validate(inst, r.sequence).reaches_target


@settings(max_examples=80, deadline=None)
@given(instances(max_n=6))
def test_cycle_bounds(inst):
    r = cycle_algorithm(inst)
    assert validate(inst, r.sequence).reaches_target
    opt = solve_bfs(inst).opt_length
    assert opt <= r.length <= 4 * opt
    if total(inst):
        assert r.length < 2 * total(inst)


@settings(max_examples=60, deadline=None)
@given(instances(max_n=6))
def test_greedy_valid_and_locally_optimal(inst):
    r = greedy_locally_optimal(inst, seed=3)
    assert validate(inst, r.sequence).reaches_target
    assert is_locally_optimal(inst, r.sequence)


def test_greedy_seeded(small_corpus):
    for inst in small_corpus[:10]:
        a = greedy_locally_optimal(inst, seed=5)
        b = greedy_locally_optimal(inst, seed=5)
        assert a.sequence == b.sequence


def test_greedy_budget():
    inst = Instance.from_lists(4, [(0, 1), (1, 2), (2, 3)], range(4), [3, 2, 1, 0])
    with pytest.raises(BudgetExceeded):
        greedy_locally_optimal(inst, step_budget=2)


@settings(max_examples=60, deadline=None)
@given(instances(max_n=7))
def test_fixed_points_end_every_phase_at_home(inst):
    from tokenswap.core import permutation_cycles, run

    seq = list(cycle_algorithm(inst).sequence)
    fixed = [inst.start.occupant[c[0]] for c in permutation_cycles(inst) if len(c) == 1]
    pos = 0
    for cycle in permutation_cycles(inst):
        for j in range(len(cycle) - 1, 0, -1):
            pos += 2 * inst.dist[cycle[j - 1]][cycle[j]] - 1
            occ = run(inst, seq[:pos])
            assert all(occ[inst.start.placement[t]] == t for t in fixed)
    assert pos == len(seq)
