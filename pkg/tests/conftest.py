import itertools
import sys

import pytest
from hypothesis import strategies as st

from metridim.generators import gnp
from metridim.graph import build_graph, is_connected


@st.composite
def connected_graphs(draw, min_n=2, max_n=8):
    """A random spanning tree plus arbitrary extra edges."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(min_value=0, max_value=v - 1))
        edges.add((u, v))
    pairs = list(itertools.combinations(range(n), 2))
    extra = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs)))
    edges.update(extra)
    return build_graph(n, sorted(edges))


def connected_gnp(n, p, count, start_seed=0):
    """The first ``count`` connected samples of G(n, p) scanning seeds upward."""
    out = []
    seed = start_seed
    while len(out) < count:
        g = gnp(n, p, seed)
        if is_connected(g):
            out.append((seed, g))
        seed += 1
    return out


@pytest.fixture
def p3():
    return build_graph(3, [(0, 1), (1, 2)])


@pytest.fixture
def c4():
    return build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(mod.format_line(num, *results[num]))
