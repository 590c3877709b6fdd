"""Core graph container, layering, separation checks."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import cycle_graph, path_graph, star_graph
from septrack import (
    CoverageError,
    DisconnectedGraphError,
    Graph,
    GraphError,
    Layering,
    Separation,
    bfs_layering,
    check_layered_separator,
    connected_components,
    normalize_edge,
    validate_layering,
    validate_separation,
)


def test_from_edges_normalizes_and_sorts():
    g = Graph.from_edges(4, [(2, 1), (0, 3), (1, 0)])
    assert g.edges == ((0, 1), (0, 3), (1, 2))
    assert g.adjacency[1] == (0, 2)
    assert g.edge_count == 3
    assert g.has_edge(1, 2) and g.has_edge(2, 1)
    assert not g.has_edge(0, 2)


@pytest.mark.parametrize(
    "n,edges",
    [
        (3, [(0, 0)]),  # loop
        (3, [(0, 1), (1, 0)]),  # duplicate
        (2, [(0, 2)]),  # out of range
        (2, [(-1, 0)]),
        (-1, []),
    ],
)
def test_from_edges_rejects_bad_input(n, edges):
    with pytest.raises(GraphError):
        Graph.from_edges(n, edges)


def test_degree_and_induced_edges():
    g = star_graph(5)
    assert g.degree(0) == 4
    assert g.degree(3) == 1
    assert g.induced_edges({0, 2, 3}) == [(0, 2), (0, 3)]


def test_normalize_edge():
    assert normalize_edge(5, 2) == (2, 5)
    assert normalize_edge(2, 5) == (2, 5)


def test_bfs_layering_path():
    g = path_graph(5)
    lay = bfs_layering(g, 0)
    assert lay.layer_of == (0, 1, 2, 3, 4)
    lay2 = bfs_layering(g, 2)
    assert lay2.layer_of == (2, 1, 0, 1, 2)
    assert lay2.max_layer == 2
    assert lay2.layers()[0] == [2]


def test_bfs_layering_disconnected_names_a_vertex():
    g = Graph.from_edges(4, [(0, 1)])
    with pytest.raises(DisconnectedGraphError) as ei:
        bfs_layering(g, 0)
    assert ei.value.vertex in (2, 3)


def test_connected_components_sorted_by_min():
    g = Graph.from_edges(6, [(4, 5), (0, 1), (2, 3)])
    comps = connected_components(g)
    assert comps == [{0, 1}, {2, 3}, {4, 5}]
    within = connected_components(g, within={2, 3, 4})
    assert within == [{2, 3}, {4}]


def test_validate_layering_reports_long_edges():
    g = path_graph(3)
    ok = Layering((0, 1, 2))
    assert validate_layering(g, ok) == []
    jump = Layering((0, 2, 1))
    assert validate_layering(g, jump) == [(0, 1)]
    with pytest.raises(CoverageError):
        validate_layering(g, Layering((0, 1)))
    with pytest.raises(CoverageError):
        validate_layering(g, Layering((0, 2, 2)))  # gap: layer 1 missing


def test_validate_separation_finds_crossing_edges():
    g = cycle_graph(4)
    sep = Separation(left=frozenset({0, 1}), right=frozenset({2, 3}))
    assert validate_separation(g, sep) == [(0, 3), (1, 2)]
    sep2 = Separation(left=frozenset({0, 1, 2}), right=frozenset({2, 3, 0}))
    assert validate_separation(g, sep2) == []


def test_validate_separation_coverage():
    g = path_graph(3)
    with pytest.raises(CoverageError):
        validate_separation(g, Separation(frozenset({0}), frozenset({1})))
    # universe restricts the coverage requirement
    assert (
        validate_separation(
            g, Separation(frozenset({0, 1}), frozenset({1})), universe={0, 1}
        )
        == []
    )


def test_check_layered_separator_exact_thresholds():
    # 6 vertices in one layer; balance is exact: 3*|side| <= 2*6, so 4 is the
    # largest legal side and 5 breaks it
    g = Graph.from_edges(6, [])
    lay = Layering((0,) * 6)
    wide = Separation(frozenset({0, 1, 2, 3, 4}), frozenset({5,}))
    res = check_layered_separator(g, wide, lay, ell=2)
    assert not res.balance_ok
    even = Separation(frozenset({0, 1, 2, 3}), frozenset({3, 4, 5}))
    res2 = check_layered_separator(g, even, lay, ell=2)
    assert res2.balance_ok  # sides minus separator: 3 and 2
    assert (res2.left_size, res2.right_size) == (3, 2)
    assert res2.layer_ok  # separator {3}: one vertex in the layer
    thin = Separation(frozenset(range(6)), frozenset({0, 1, 2, 3, 4, 5}))
    res3 = check_layered_separator(g, thin, lay, ell=2)
    assert not res3.layer_ok  # 6 separator vertices in one layer
    assert res3.layer_violations == (0,)


@given(st.integers(2, 40), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_bfs_layering_steps_by_one(n, rnd):
    edges = {(i - 1, i) for i in range(1, n)}
    for _ in range(n):
        u, v = rnd.randrange(n), rnd.randrange(n)
        if u != v:
            edges.add(normalize_edge(u, v))
    g = Graph.from_edges(n, sorted(edges))
    lay = bfs_layering(g, 0)
    assert lay.layer_of[0] == 0
    assert validate_layering(g, lay) == []
    # every non-root vertex has a neighbor one layer up
    for v in range(1, n):
        lv = lay.layer_of[v]
        assert any(lay.layer_of[u] == lv - 1 for u in g.adjacency[v])
