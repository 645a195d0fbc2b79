from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tokenswap.core import (
    BudgetExceeded,
    Instance,
    WeightedInstance,
    half_total_lower_bound,
    sequence_weight,
    validate,
)
from tokenswap.exact import _bfs_python, solve_bfs, solve_idastar, solve_weighted

from .conftest import instances


def test_p2(p2_swapped):
    for solver in (solve_bfs, solve_idastar):
        r = solver(p2_swapped)
        assert r.opt_length == 1
        assert validate(p2_swapped, r.witness).reaches_target


def test_c3_rotation(c3_rotation):
    assert solve_bfs(c3_rotation).opt_length == 2
    assert solve_idastar(c3_rotation).opt_length == 2


def test_trivial_instance():
    inst = Instance.from_lists(3, [(0, 1), (1, 2)], range(3), range(3))
    r = solve_bfs(inst)
    assert r.opt_length == 0 and len(r.witness) == 0


def test_path_reversal_p4():
    # Reversing a path of n vertices takes n(n-1)/2 swaps.
    inst = Instance.from_lists(4, [(0, 1), (1, 2), (2, 3)], range(4), [3, 2, 1, 0])
    assert solve_bfs(inst).opt_length == 6
    assert solve_idastar(inst).opt_length == 6


def test_budget(c3_rotation):
    with pytest.raises(BudgetExceeded):
        solve_bfs(c3_rotation, state_budget=1)
    with pytest.raises(BudgetExceeded):
        solve_idastar(c3_rotation, state_budget=1)


def test_witness_is_deterministic(small_corpus):
    for inst in small_corpus[:10]:
        assert solve_bfs(inst).witness == solve_bfs(inst).witness


@settings(max_examples=60, deadline=None)
@given(instances(max_n=6))
def test_bfs_matches_idastar(inst):
    a, b = solve_bfs(inst), solve_idastar(inst)
    assert a.opt_length == b.opt_length == len(a.witness) == len(b.witness)
    assert validate(inst, a.witness).reaches_target
    assert validate(inst, b.witness).reaches_target
    assert a.opt_length >= half_total_lower_bound(inst)


@settings(max_examples=40, deadline=None)
@given(instances(max_n=6))
def test_vectorised_bfs_matches_plain_bfs(inst):
    fast, plain = solve_bfs(inst), _bfs_python(inst, 10**7) if inst.start != inst.target else None
    if plain is not None:
        assert fast.opt_length == plain.opt_length
        assert fast.witness == plain.witness


class TestWeighted:
    def test_c3_all_ones(self, c3_rotation):
        r = solve_weighted(WeightedInstance(c3_rotation, [1, 1, 1]))
        assert r.opt_weight == 4

    def test_zero_weight_tokens_are_free(self, p2_swapped):
        r = solve_weighted(WeightedInstance(p2_swapped, [0, 0]))
        assert r.opt_weight == 0
        assert validate(p2_swapped, r.witness).reaches_target

    def test_rational_weights(self, p2_swapped):
        r = solve_weighted(WeightedInstance(p2_swapped, [Fraction(1, 3), Fraction(1, 2)]))
        assert r.opt_weight == Fraction(5, 6)

    @settings(max_examples=40, deadline=None)
    @given(instances(max_n=5))
    def test_all_ones_is_twice_unweighted(self, inst):
        r = solve_weighted(WeightedInstance(inst, [1] * inst.n))
        assert r.opt_weight == 2 * solve_bfs(inst).opt_length

    @settings(max_examples=40, deadline=None)
    @given(instances(max_n=5), st.data())
    def test_heuristic_matches_uniform_cost(self, inst, data):
        weights = data.draw(st.lists(st.sampled_from([0, 1, 2, Fraction(1, 2)]), min_size=inst.n, max_size=inst.n))
        winst = WeightedInstance(inst, weights)
        guided = solve_weighted(winst)
        plain = solve_weighted(winst, heuristic=False)
        assert guided.opt_weight == plain.opt_weight
        assert validate(inst, guided.witness).reaches_target
        assert sequence_weight(winst, guided.witness) == guided.opt_weight
