"""Layered separators: BFS trees, fundamental cycles, the separator tree."""

import random

import numpy as np
import pytest

from helpers import nx_rotation, random_connected_planar
from septrack import (
    CycleIndex,
    GeneratorSpec,
    Graph,
    GraphError,
    InvariantViolation,
    bfs_tree,
    build_separator_tree,
    ceil_log_three_halves,
    check_layered_separator,
    cycle_sides,
    find_layered_separator,
    fundamental_cycle,
    generate,
    nontree_edges,
    triangulate,
    validate_separation,
    validate_separator_tree,
)


def octahedron():
    return generate(GeneratorSpec("cylinder_triangulation", (2, 3), seed=0))


def random_tri(n, seed):
    return generate(GeneratorSpec("random_triangulation", (n,), seed=seed))


@pytest.mark.parametrize(
    "n,expected",
    [(1, 0), (2, 2), (3, 3), (4, 4), (10, 6), (100, 12), (1000, 18), (5000, 22)],
)
def test_ceil_log_three_halves(n, expected):
    h = ceil_log_three_halves(n)
    assert h == expected
    assert 3**h >= n * 2**h
    if h:
        assert 3 ** (h - 1) < n * 2 ** (h - 1)


def test_bfs_tree_structure():
    g, rot = octahedron()
    tree, lay = bfs_tree(g, 0)
    assert tree.root == 0
    assert tree.parent[0] == -1
    assert sorted(lay.layer_of) == [0, 1, 1, 1, 1, 2]
    for v in range(1, 6):
        assert lay.layer_of[v] == lay.layer_of[tree.parent[v]] + 1
    assert len(nontree_edges(g, tree)) == g.edge_count - 5


def test_fundamental_cycle_two_per_layer():
    g, rot = random_tri(60, 4)
    tri = triangulate(g, rot)
    tree, lay = bfs_tree(tri, 0)
    for e in nontree_edges(tri.graph, tree):
        cyc = fundamental_cycle(tree, e, lay)
        assert cyc.closing_edge == e
        verts = cyc.vertices
        assert len(set(verts)) == len(verts)
        # consecutive cycle vertices are joined by tree edges, ends by e
        for a, b in zip(verts, verts[1:]):
            assert tree.is_tree_edge(a, b)
        assert {verts[0], verts[-1]} == set(e)
        counts: dict[int, int] = {}
        for v in verts:
            counts[lay.layer_of[v]] = counts.get(lay.layer_of[v], 0) + 1
        assert max(counts.values()) <= 2


def test_cycle_sides_is_a_separation():
    g, _ = octahedron()
    tree, lay = bfs_tree(g, 0)
    tri = triangulate(g, nx_rotation(g))
    for e in nontree_edges(g, tree):
        cyc = fundamental_cycle(tree, e)
        inside, outside = cycle_sides(tri, cyc)
        n_cyc = len(cyc.vertices)
        assert len(inside) + len(outside) + n_cyc == g.vertex_count
        assert not (set(inside) & set(outside))


def test_cycle_index_matches_dual_walk_oracle():
    # the per-candidate interval trick must agree with direct face flooding
    for n, seed in [(25, 0), (40, 1), (60, 2), (80, 3)]:
        g, rot = random_tri(n, seed)
        tri = triangulate(g, rot)
        tree, lay = bfs_tree(tri, 0)
        ci = CycleIndex(tri, tree)
        for k, e in enumerate(ci.candidates):
            cyc = fundamental_cycle(tree, e)
            inside, outside = cycle_sides(tri, cyc)
            assert sorted(ci.inside_vertices(k)) == sorted(inside)


def test_cycle_index_scan_counts_match_sets():
    g, rot = random_tri(50, 7)
    tri = triangulate(g, rot)
    tree, lay = bfs_tree(tri, 0)
    ci = CycleIndex(tri, tree)
    rng = np.random.default_rng(11)
    weights = rng.integers(0, 5, tri.graph.vertex_count).astype(np.int64)
    ins, onc, outs = ci.scan(weights)
    for k, e in enumerate(ci.candidates):
        cyc = fundamental_cycle(tree, e)
        inside, outside = cycle_sides(tri, cyc)
        assert ins[k] == sum(int(weights[v]) for v in inside)
        assert onc[k] == sum(int(weights[v]) for v in cyc.vertices)
        assert outs[k] == sum(int(weights[v]) for v in outside)


def test_balanced_choice_picks_min_interior_smallest_id():
    for seed in range(5):
        g, rot = random_tri(45, seed + 20)
        tri = triangulate(g, rot)
        tree, lay = bfs_tree(tri, 0)
        ci = CycleIndex(tri, tree)
        weights = np.ones(tri.graph.vertex_count, dtype=np.int64)
        ins, onc, outs = ci.scan(weights)
        total = int(weights.sum())
        balanced = [
            k
            for k in range(len(ci.candidates))
            if 3 * int(ins[k]) <= 2 * total and 3 * int(outs[k]) <= 2 * total
        ]
        choice = ci.balanced_choice(weights)
        assert balanced, "a balanced fundamental cycle always exists here"
        best = min(balanced, key=lambda k: (int(ins[k]), k))
        assert choice == best


def test_find_layered_separator_certificates():
    g, rot = random_tri(80, 5)
    tri = triangulate(g, rot)
    tree, lay = bfs_tree(tri, 0)
    weights = np.ones(tri.graph.vertex_count, dtype=np.int64)
    cyc, sep = find_layered_separator(tri, tree, lay, weights)
    assert validate_separation(tri.graph, sep) == []
    chk = check_layered_separator(tri.graph, sep, lay, ell=2)
    assert chk.balance_ok and chk.layer_ok


def test_separator_tree_on_generated_families():
    for fam, args in [
        ("grid", (7, 9)),
        ("stacked_triangulation", (64,)),
        ("cylinder_triangulation", (4, 7)),
        ("random_triangulation", (90,)),
    ]:
        g, rot = generate(GeneratorSpec(fam, args, seed=1))
        tri = triangulate(*biconnect_pair(g, rot))
        tree, lay = bfs_tree(tri, 0)
        st = build_separator_tree(tri, lay, ell=2, tree=tree)
        validate_separator_tree(tri.graph, lay, st, exact_components=True)
        n = tri.graph.vertex_count
        assert st.height <= ceil_log_three_halves(n) + 1


def biconnect_pair(g, rot):
    from septrack import biconnect

    g2, rot2, _ = biconnect(g, rot)
    return g2, rot2


def test_separator_tree_small_planar_corpus(planar_corpus):
    from septrack import biconnect

    done = 0
    for g, rot in planar_corpus[:80]:
        if g.vertex_count < 3:
            continue
        g2, rot2, _ = biconnect(g, rot)
        tri = triangulate(g2, rot2)
        tree, lay = bfs_tree(tri, 0)
        st = build_separator_tree(tri, lay, ell=2, tree=tree)
        validate_separator_tree(tri.graph, lay, st, exact_components=True)
        done += 1
    assert done >= 40


def test_separator_tree_deterministic():
    g, rot = random_tri(70, 2)
    tri = triangulate(g, rot)
    tree, lay = bfs_tree(tri, 0)
    a = build_separator_tree(tri, lay, ell=2, tree=tree)
    b = build_separator_tree(tri, lay, ell=2, tree=tree)
    assert a.node_of_vertex == b.node_of_vertex
    assert [nd.vertices for nd in a.nodes] == [nd.vertices for nd in b.nodes]


def test_separator_tree_rejects_ell_one():
    g, rot = random_tri(20, 0)
    tri = triangulate(g, rot)
    tree, lay = bfs_tree(tri, 0)
    with pytest.raises(GraphError):
        build_separator_tree(tri, lay, ell=1, tree=tree)


def test_validate_separator_tree_catches_tampering():
    g, rot = random_tri(40, 6)
    tri = triangulate(g, rot)
    tree, lay = bfs_tree(tri, 0)
    st = build_separator_tree(tri, lay, ell=2, tree=tree)
    if st.nodes[0].is_leaf:
        pytest.skip("tree degenerated to a leaf")
    # move one vertex to the wrong node
    v = next(iter(st.nodes[-1].vertices))
    bad_map = list(st.node_of_vertex)
    bad_map[v] = 0
    import dataclasses

    st_bad = dataclasses.replace(st, node_of_vertex=tuple(bad_map))
    with pytest.raises(InvariantViolation):
        validate_separator_tree(tri.graph, lay, st_bad)
