import random

import pytest
from hypothesis import strategies as st

from tokenswap.core import Configuration, Graph, Instance
from tokenswap.experiments import random_connected_instance


@st.composite
def instances(draw, min_n=1, max_n=6):
    """Connected instance: random tree plus extra edges, random target."""
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    if pairs:
        edges |= set(draw(st.lists(st.sampled_from(pairs), max_size=len(pairs), unique=True)))
    start = draw(st.permutations(range(n)))
    target = draw(st.permutations(range(n)))
    return Instance(Graph(n, edges), Configuration(tuple(start)), Configuration(tuple(target)))


@st.composite
def instances_with_sequence(draw, max_n=6, max_len=20):
    inst = draw(instances(max_n=max_n))
    edges = inst.graph.sorted_edges
    if not edges:
        return inst, []
    seq = draw(st.lists(st.sampled_from(edges), max_size=max_len))
    return inst, seq


@pytest.fixture
def p2_swapped():
    return Instance.from_lists(2, [(0, 1)], [0, 1], [1, 0])


@pytest.fixture
def c3_rotation():
    # Token on v targets v+1.
    return Instance.from_lists(3, [(0, 1), (1, 2), (0, 2)], [0, 1, 2], [1, 2, 0])


@pytest.fixture
def small_corpus():
    rng = random.Random(7)
    return [random_connected_instance(rng.randint(2, 6), rng) for _ in range(40)]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
