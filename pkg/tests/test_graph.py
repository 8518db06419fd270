import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sepkit.graph import (
    Graph,
    GraphError,
    bfs_order,
    complete_graph,
    connected_components,
    disjoint_union,
    format_edge_list,
    grid_graph,
    induce,
    log2c,
    parse_edge_list,
    path_graph,
)


def test_log_clamp():
    assert log2c(0) == log2c(1) == log2c(2) == 1.0
    assert log2c(8) == pytest.approx(3.0)


def test_from_edges_rejects_bad_input():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 1), (1, 0)])


def test_grid_shape():
    g = grid_graph(3, 4)
    assert g.n == 12 and g.m == 3 * 3 + 2 * 4
    assert g.coords[5] == (1, 1)
    assert g.has_edge(0, 1) and g.has_edge(0, 4) and not g.has_edge(0, 5)


def test_components_and_union():
    g = disjoint_union(path_graph(3), complete_graph(2), grid_graph(1, 1))
    comps = connected_components(g)
    assert [sorted(c) for c in comps] == [[0, 1, 2], [3, 4], [5]]
    assert [sorted(c) for c in connected_components(g, within={0, 2, 3})] == [[0], [2], [3]]


def test_bfs_distances():
    d = bfs_order(path_graph(5), [0])
    assert d == {0: 0, 1: 1, 2: 2, 3: 3, 4: 4}
    assert bfs_order(path_graph(5), [0], allowed={0, 1, 3}) == {0: 0, 1: 1}


def test_induce_maps_back():
    g = grid_graph(3, 3)
    sub = induce(g, [4, 1, 7])
    assert sub.vertices == (1, 4, 7)
    assert sorted(sub.graph.edges()) == [(0, 1), (1, 2)]
    assert sub.to_global([0, 2]) == frozenset({1, 7})


def test_edge_list_roundtrip_with_labels():
    g = parse_edge_list("# comment\nb a\n\na c\n")
    assert g.labels == ("b", "a", "c")
    assert sorted(g.edges()) == [(0, 1), (1, 2)]
    again = parse_edge_list(format_edge_list(g))
    assert sorted(again.edges()) == sorted(g.edges())


@pytest.mark.parametrize("text", ["a b c\n", "a a\n", "a b\nb a\n", "x\n"])
def test_edge_list_errors(text):
    with pytest.raises(GraphError):
        parse_edge_list(text)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 30), st.data())
def test_components_partition_vertices(n, data):
    pairs = data.draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] < e[1])))
    g = Graph.from_edges(n, sorted(pairs))
    comps = connected_components(g)
    assert sorted(v for c in comps for v in c) == list(range(n))
    for u, v in g.edges():
        assert any(u in c and v in c for c in comps)
