import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metridim.errors import Disconnected, NTooSmall, SelfLoop, VertexOutOfRange
from metridim.generators import complete, cycle, gnp, path
from metridim.graph import (UNREACHABLE, all_pairs_distances, bfs_distances, build_graph,
                            diameter, format_edge_list, is_connected, parse_edge_list,
                            read_edge_list, write_edge_list)

from conftest import connected_graphs


def test_build_path(p3):
    assert p3.n == 3 and p3.m == 2
    assert p3.adjacency == [(1,), (0, 2), (1,)]


def test_build_collapses_duplicates():
    g = build_graph(3, [(0, 1), (1, 0), (1, 2)])
    assert g.m == 2
    assert g == build_graph(3, [(0, 1), (1, 2)])


def test_build_rejects_self_loop():
    with pytest.raises(SelfLoop) as err:
        build_graph(2, [(0, 0)])
    assert err.value.u == 0


@pytest.mark.parametrize("edges", [[(0, 3)], [(-1, 0)]])
def test_build_rejects_out_of_range(edges):
    with pytest.raises(VertexOutOfRange):
        build_graph(3, edges)


@pytest.mark.parametrize("n", [0, 1])
def test_build_rejects_tiny(n):
    with pytest.raises(NTooSmall):
        build_graph(n, [])


def test_bfs_examples(p3, c4):
    assert bfs_distances(p3, 0).tolist() == [0, 1, 2]
    assert bfs_distances(c4, 0).tolist() == [0, 1, 2, 1]
    assert bfs_distances(build_graph(2, []), 0).tolist() == [0, UNREACHABLE]


def test_bfs_bad_source(p3):
    with pytest.raises(VertexOutOfRange):
        bfs_distances(p3, 3)


def test_all_pairs_examples(p3):
    k3 = all_pairs_distances(complete(3))
    assert (k3[~np.eye(3, dtype=bool)] == 1).all()
    assert all_pairs_distances(p3).max() == 2
    assert all_pairs_distances(cycle(5)).max() == 2


def test_all_pairs_marks_unreachable():
    d = all_pairs_distances(build_graph(4, [(0, 1), (2, 3)]))
    assert d[0, 2] == UNREACHABLE and d[1, 0] == 1


@pytest.mark.parametrize("g,expected", [
    (path(5), True), (build_graph(4, [(0, 1), (2, 3)]), False), (complete(2), True),
])
def test_is_connected(g, expected):
    assert is_connected(g) is expected


@pytest.mark.parametrize("g,expected", [(complete(6), 1), (path(7), 6), (cycle(8), 4)])
def test_diameter(g, expected):
    assert diameter(g) == expected


def test_diameter_disconnected():
    with pytest.raises(Disconnected):
        diameter(build_graph(4, [(0, 1), (2, 3)]))


@settings(max_examples=60, deadline=None)
@given(connected_graphs(max_n=10))
def test_distance_matrix_properties(g):
    d = all_pairs_distances(g)
    n = g.n
    assert (d == d.T).all()
    for v in range(n):
        assert d[v].tolist() == bfs_distances(g, v).tolist()
    # triangle inequality over all triples
    assert (d[:, :, None] <= d[:, None, :] + d.T[None, :, :]).all()
    # adjacent rows differ by at most one everywhere
    for u, v in g.edge_list():
        assert np.abs(d[u].astype(int) - d[v].astype(int)).max() <= 1
    assert diameter(g) == d.max()


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 30), st.floats(0.0, 1.0), st.integers(0, 2**64 - 1))
def test_graph_invariants(n, p, seed):
    g = gnp(n, p, seed)
    adj = g.adjacency
    for v, nb in enumerate(adj):
        assert list(nb) == sorted(set(nb))
        assert v not in nb
        for u in nb:
            assert v in adj[u]
    assert g.m * 2 == sum(len(nb) for nb in adj)


def test_sparse_and_dense_all_pairs_agree(monkeypatch):
    import metridim.graph as graph_mod

    g = gnp(60, 0.08, 3)
    dense = all_pairs_distances(g)
    monkeypatch.setattr(graph_mod, "DENSE_APSP_MAX_N", 10)
    assert (graph_mod.all_pairs_distances(g) == dense).all()


def test_edge_list_round_trip(tmp_path):
    g = gnp(12, 0.3, 5)
    f = tmp_path / "g.el"
    write_edge_list(g, f)
    assert read_edge_list(f) == g
    assert format_edge_list(g).splitlines()[0] == "n 12"


def test_edge_list_comments_and_isolated_vertices():
    g = parse_edge_list("# header comment\nn 5\n\n0 1\n# another\n1   2\n")
    assert g.n == 5 and g.m == 2
    assert g.degrees.tolist() == [1, 2, 1, 0, 0]


@pytest.mark.parametrize("text", ["0 1\n", "n 3\n0 1 2\n", ""])
def test_edge_list_malformed(text):
    with pytest.raises(ValueError):
        parse_edge_list(text)
