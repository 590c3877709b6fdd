"""Immutable simple graphs, BFS layerings, and separation validators.

Vertices are dense integers 0..n-1. Subgraphs are referenced by vertex subsets
of the parent graph; induced structures keep the parent's vertex ids.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import CoverageError, DisconnectedGraphError, GraphError

Edge = tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 0..vertex_count-1."""

    vertex_count: int
    edges: tuple[Edge, ...]

    @staticmethod
    def from_edges(vertex_count: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if vertex_count < 0:
            raise GraphError("vertex_count must be nonnegative")
        seen: set[Edge] = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphError(f"edge ({u},{v}) out of range for n={vertex_count}")
            e = normalize_edge(u, v)
            if e in seen:
                raise GraphError(f"parallel edge ({e[0]},{e[1]})")
            seen.add(e)
        return Graph(vertex_count, tuple(sorted(seen)))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbor lists; the deterministic order used by traversals."""
        adj: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.edge_set

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def vertices(self) -> range:
        return range(self.vertex_count)

    def induced_edges(self, subset: Iterable[int]) -> list[Edge]:
        """Edges of this graph with both endpoints in ``subset``."""
        s = set(subset)
        return [e for e in self.edges if e[0] in s and e[1] in s]


@dataclass(frozen=True)
class Layering:
    """Assignment of every vertex to a layer; layers are consecutive ints from 0."""

    layer_of: tuple[int, ...]

    @property
    def vertex_count(self) -> int:
        return len(self.layer_of)

    @property
    def max_layer(self) -> int:
        return max(self.layer_of) if self.layer_of else -1

    def layers(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.max_layer + 1)]
        for v, i in enumerate(self.layer_of):
            out[i].append(v)
        return out


@dataclass(frozen=True)
class Separation:
    """Two vertex sets covering a subgraph; their intersection is the separator."""

    left: frozenset[int]
    right: frozenset[int]

    @property
    def separator(self) -> frozenset[int]:
        return self.left & self.right

    @property
    def left_only(self) -> frozenset[int]:
        return self.left - self.right

    @property
    def right_only(self) -> frozenset[int]:
        return self.right - self.left


@dataclass(frozen=True)
class LayeredSeparatorCheck:
    """Result of checking a separation against a layering and width bound ell."""

    ell: int
    universe_size: int
    left_size: int   # |left - right|
    right_size: int  # |right - left|
    per_layer_counts: dict[int, int]
    layer_violations: tuple[int, ...]  # layers where the separator exceeds ell
    balance_ok: bool

    @property
    def layer_ok(self) -> bool:
        return not self.layer_violations

    @property
    def valid(self) -> bool:
        return self.layer_ok and self.balance_ok


def validate_layering(g: Graph, layering: Layering) -> list[Edge]:
    """Return edges whose endpoints differ by more than one layer.

    Coverage mismatches (wrong length, negative or gapped layer indices) raise
    CoverageError instead of being reported as violations.
    """
    if layering.vertex_count != g.vertex_count:
        raise CoverageError(
            f"layering covers {layering.vertex_count} vertices, graph has {g.vertex_count}"
        )
    if g.vertex_count:
        present = set(layering.layer_of)
        if min(present) < 0:
            raise CoverageError("negative layer index")
        if present != set(range(max(present) + 1)):
            raise CoverageError("layer indices are not consecutive from 0")
    return [e for e in g.edges if abs(layering.layer_of[e[0]] - layering.layer_of[e[1]]) > 1]


def validate_separation(
    g: Graph, sep: Separation, universe: Iterable[int] | None = None
) -> list[Edge]:
    """Return edges joining left-only to right-only vertices (must be none).

    ``universe`` restricts the check to an induced subgraph; left and right
    must cover it exactly, else CoverageError.
    """
    uni = set(universe) if universe is not None else set(g.vertices())
    if (sep.left | sep.right) != uni:
        missing = sorted(uni - (sep.left | sep.right))[:3]
        extra = sorted((sep.left | sep.right) - uni)[:3]
        raise CoverageError(f"separation does not cover universe (missing={missing}, extra={extra})")
    lo, ro = sep.left_only, sep.right_only
    bad = []
    for u, v in g.edges:
        if u in uni and v in uni:
            if (u in lo and v in ro) or (u in ro and v in lo):
                bad.append((u, v))
    return bad


def check_layered_separator(
    g: Graph,
    sep: Separation,
    layering: Layering,
    ell: int,
    universe: Iterable[int] | None = None,
) -> LayeredSeparatorCheck:
    """Check the layered-separator conditions: per-layer width and 2/3 balance.

    Balance is exact rational: 3 * |side| <= 2 * |universe|.
    """
    uni = set(universe) if universe is not None else set(g.vertices())
    counts: dict[int, int] = {}
    for v in sep.separator:
        if v in uni:
            i = layering.layer_of[v]
            counts[i] = counts.get(i, 0) + 1
    violations = tuple(sorted(i for i, c in counts.items() if c > ell))
    left_size = len(sep.left_only & uni)
    right_size = len(sep.right_only & uni)
    total = len(uni)
    balance_ok = 3 * left_size <= 2 * total and 3 * right_size <= 2 * total
    return LayeredSeparatorCheck(
        ell=ell,
        universe_size=total,
        left_size=left_size,
        right_size=right_size,
        per_layer_counts=counts,
        layer_violations=violations,
        balance_ok=balance_ok,
    )


def bfs_layering(g: Graph, root: int = 0) -> Layering:
    """Layer every vertex by BFS distance from root; disconnected input errors."""
    if not (0 <= root < g.vertex_count):
        raise GraphError(f"root {root} out of range")
    dist = [-1] * g.vertex_count
    dist[root] = 0
    q = deque([root])
    while q:
        u = q.popleft()
        for w in g.adjacency[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                q.append(w)
    for v, d in enumerate(dist):
        if d < 0:
            raise DisconnectedGraphError(v)
    return Layering(tuple(dist))


def connected_components(g: Graph, within: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Components of the subgraph induced on ``within``, sorted by minimum vertex."""
    if within is None:
        pool = set(g.vertices())
    else:
        pool = set(within)
    comps: list[frozenset[int]] = []
    remaining = set(pool)
    while remaining:
        start = min(remaining)
        seen = {start}
        q = deque([start])
        while q:
            u = q.popleft()
            for w in g.adjacency[u]:
                if w in pool and w not in seen:
                    seen.add(w)
                    q.append(w)
        comps.append(frozenset(seen))
        remaining -= seen
    comps.sort(key=min)
    return comps
