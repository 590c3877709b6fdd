"""Shared graph constructors and brute-force oracles for the test suite."""

from __future__ import annotations

import itertools
import random

import networkx as nx

from septrack import Graph, RotationSystem, normalize_edge


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, list(itertools.combinations(range(n), 2)))


def nx_rotation(g: Graph) -> RotationSystem:
    """Planar rotation system via an external embedder (test-only crutch)."""
    G = nx.Graph()
    G.add_nodes_from(range(g.vertex_count))
    G.add_edges_from(g.edges)
    ok, emb = nx.check_planarity(G)
    assert ok, "oracle generated a non-planar graph"
    return RotationSystem(
        tuple(tuple(emb.neighbors_cw_order(v)) for v in range(g.vertex_count))
    )


def random_connected_planar(rng: random.Random, n_max: int = 8) -> tuple[Graph, RotationSystem | None]:
    """One connected planar graph with 1..n_max vertices, embedding included."""
    while True:
        n = rng.randint(1, n_max)
        if n == 1:
            return Graph.from_edges(1, []), None
        pool = list(itertools.combinations(range(n), 2))
        m = rng.randint(n - 1, min(len(pool), 3 * n - 6 if n >= 3 else 1))
        edges = rng.sample(pool, m)
        G = nx.Graph(edges)
        G.add_nodes_from(range(n))
        if not nx.is_connected(G):
            continue
        ok, _ = nx.check_planarity(G)
        if not ok:
            continue
        g = Graph.from_edges(n, edges)
        return g, (nx_rotation(g) if n >= 3 else None)


def edges_nest(iv1: tuple[int, int], iv2: tuple[int, int]) -> bool:
    """Strict nesting of two position intervals (shared endpoints never nest)."""
    (a1, b1), (a2, b2) = iv1, iv2
    return (a1 < a2 and b2 < b1) or (a2 < a1 and b1 < b2)


def brute_min_queues_partition(g: Graph, order: list[int]) -> int:
    """Smallest q such that the edges split into q pairwise non-nesting sets.

    Plain backtracking over edge-to-queue assignments; exponential, only for
    tiny graphs.
    """
    pos = {v: i for i, v in enumerate(order)}
    ivs = [tuple(sorted((pos[u], pos[v]))) for u, v in g.edges]
    m = len(ivs)
    if m == 0:
        return 0

    def fits(target: int) -> bool:
        queues: list[list[tuple[int, int]]] = [[] for _ in range(target)]

        def place(i: int) -> bool:
            if i == m:
                return True
            tried_empty = False
            for q in queues:
                if not q:
                    if tried_empty:  # empty queues are interchangeable
                        continue
                    tried_empty = True
                if any(edges_nest(ivs[i], other) for other in q):
                    continue
                q.append(ivs[i])
                if place(i + 1):
                    return True
                q.pop()
            return False

        return place(0)

    q = 1
    while not fits(q):
        q += 1
    return q


def brute_xcrossings(track_of, pos_of, edges) -> set[tuple]:
    """All X-crossing pairs by direct quadratic enumeration."""
    out = set()
    for e1, e2 in itertools.combinations(edges, 2):
        for u1, v1 in ((e1[0], e1[1]), (e1[1], e1[0])):
            for u2, v2 in ((e2[0], e2[1]), (e2[1], e2[0])):
                if track_of[u1] != track_of[u2] or track_of[v1] != track_of[v2]:
                    continue
                if track_of[u1] == track_of[v1]:
                    continue
                if (pos_of[u1] - pos_of[u2]) * (pos_of[v1] - pos_of[v2]) < 0:
                    out.add((normalize_edge(*e1), normalize_edge(*e2)))
    return out


def random_layered_assignment(rng: random.Random, ell: int, p: int, n_target: int):
    """Random crossing-free layered track assignment for wrap tests.

    Returns (groups, edges): groups maps (layer, k) with 1 <= k <= ell to a
    vertex sequence, and edges only join vertices of adjacent layers, filtered
    greedily so no X-crossing survives.
    """
    layer_of: dict[int, int] = {}
    groups: dict[tuple[int, int], list[int]] = {}
    v = 0
    for i in range(p):
        width = rng.randint(1, ell)
        for k in range(1, width + 1):
            size = rng.randint(0, max(1, n_target // (p * width)) + 1)
            if size == 0:
                continue
            seq = list(range(v, v + size))
            v += size
            groups[(i, k)] = seq
            for u in seq:
                layer_of[u] = i
    if not groups:
        groups[(0, 1)] = [0]
        layer_of[0] = 0
        v = 1
    track_of = {}
    pos_of = {}
    for key in groups:
        for j, u in enumerate(groups[key]):
            track_of[u] = key
            pos_of[u] = j
    candidates = [
        (u, w)
        for u in range(v)
        for w in range(u + 1, v)
        if abs(layer_of[u] - layer_of[w]) <= 1 and track_of[u] != track_of[w]
    ]
    rng.shuffle(candidates)
    kept: list[tuple[int, int]] = []
    per_pair: dict[tuple, list[tuple[int, int]]] = {}
    for u, w in candidates:
        if len(kept) >= 3 * n_target:
            break
        a, b = track_of[u], track_of[w]
        if b < a:
            a, b, u, w = b, a, w, u
        clean = True
        for x, y in per_pair.get((a, b), ()):
            if (pos_of[u] - pos_of[x]) * (pos_of[w] - pos_of[y]) < 0:
                clean = False
                break
        if clean:
            kept.append((u, w))
            per_pair.setdefault((a, b), []).append((u, w))
    return groups, kept, layer_of
