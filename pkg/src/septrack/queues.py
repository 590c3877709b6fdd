"""Queue layouts from track layouts, their validator, and exact small oracles.

A queue layout is a vertex order plus an edge partition with no two edges of
one part strictly nested. Concatenating the tracks of an X-crossing-free
layout and grouping edges by span yields one: same-span edges cannot nest.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations

from .errors import GraphError, InvariantViolation
from .graph import Edge, Graph, normalize_edge
from .tracks import TrackAssignment, same_track_edges, verify_no_xcrossing


@dataclass(frozen=True)
class QueueLayout:
    vertex_order: tuple[int, ...]
    edges: tuple[Edge, ...]
    queue_of: tuple[int, ...]  # parallel to edges
    queue_count: int

    @cached_property
    def position_of(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertex_order)}

    def interval_of(self, e: Edge) -> tuple[int, int]:
        a, b = self.position_of[e[0]], self.position_of[e[1]]
        return (a, b) if a < b else (b, a)


def tracks_to_queues(t: TrackAssignment, edges: list[Edge]) -> QueueLayout:
    """Queue layout on the concatenated track order, one queue per edge span.

    The input must be an X-crossing-free proper track assignment (checked).
    Span values are compacted to dense queue indices 0..q-1.
    """
    if same_track_edges(t, edges):
        raise GraphError("an edge joins two vertices of one track")
    bad = verify_no_xcrossing(t, edges)
    if bad:
        raise GraphError(f"track assignment has X-crossings: {bad[:3]}")
    tr = t.track_index_of
    spans = [abs(tr[u] - tr[v]) for u, v in edges]
    dense = {s: i for i, s in enumerate(sorted(set(spans)))}
    q = QueueLayout(
        vertex_order=tuple(t.flat_order()),
        edges=tuple(edges),
        queue_of=tuple(dense[s] for s in spans),
        queue_count=len(dense),
    )
    nested = validate_queue_layout(None, q)
    if nested:
        raise InvariantViolation(f"span classes nest: {nested[:3]}")
    return q


def validate_queue_layout(g: Graph | None, q: QueueLayout) -> list[tuple[Edge, Edge, int]]:
    """Every same-queue pair of strictly nested edges (must be empty).

    Nesting is strict: pairs sharing an endpoint never nest. A max-hi sweep
    per queue detects violations; only then are pairs enumerated.
    """
    if g is not None:
        if {normalize_edge(*e) for e in g.edges} != {normalize_edge(*e) for e in q.edges}:
            raise GraphError("queue layout edges do not match the graph")
    byq: dict[int, list[tuple[int, int, Edge]]] = {}
    for e, qi in zip(q.edges, q.queue_of):
        lo, hi = q.interval_of(e)
        byq.setdefault(qi, []).append((lo, hi, e))
    out: list[tuple[Edge, Edge, int]] = []
    for qi, items in sorted(byq.items()):
        items.sort()
        best = -1  # max hi among edges with strictly smaller lo
        dirty = False
        j = 0
        for i, (lo, hi, _) in enumerate(items):
            while items[j][0] < lo:
                best = max(best, items[j][1])
                j += 1
            if hi < best:
                dirty = True
                break
        if not dirty:
            continue
        for i, (lo, hi, e) in enumerate(items):
            for lo2, hi2, f in items[i + 1 :]:
                if lo < lo2 and hi2 < hi:
                    out.append((e, f, qi))
    return out


def min_queues_fixed_order(g: Graph, order: list[int] | tuple[int, ...]) -> int:
    """Minimum queues for a fixed vertex order = the largest rainbow.

    The nesting relation is a strict partial order on edges; the minimum
    antichain cover equals the longest chain. Edges sorted by (lo asc,
    hi asc) turn chains into strictly decreasing hi-subsequences.
    """
    pos = {v: i for i, v in enumerate(order)}
    if len(pos) != g.vertex_count or set(pos) != set(g.vertices()):
        raise GraphError("order is not a permutation of the vertices")
    iv = sorted(
        (min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in g.edges
    )
    # longest strictly decreasing subsequence of hi; equal-lo edges are hi-
    # ascending here, so no two of them are ever picked together. Negating
    # hi turns this into a strict LIS (patience sorting).
    tails: list[int] = []
    for _, hi in iv:
        x = -hi
        k = bisect.bisect_left(tails, x)
        if k == len(tails):
            tails.append(x)
        else:
            tails[k] = x
    return len(tails)


def _closed_chain_exceeds(iv: list[tuple[int, int]], limit: int) -> bool:
    """True when the longest strictly nested chain among intervals > limit."""
    best = 0
    iv = sorted(iv)
    lens: list[int] = []
    for i, (lo, hi) in enumerate(iv):
        L = 1
        for j in range(i):
            lo2, hi2 = iv[j]
            if lo2 < lo and hi < hi2:
                L = max(L, lens[j] + 1)
        lens.append(L)
        best = max(best, L)
        if best > limit:
            return True
    return False


def exact_queue_number(g: Graph, limit: int = 10) -> int:
    """Ground truth by search: the minimum over all vertex orders.

    Guarded to small graphs. Iterative deepening on the answer; orders are
    grown vertex by vertex and pruned as soon as the closed edges already
    hold a rainbow larger than the target.
    """
    n = g.vertex_count
    if n > limit:
        raise GraphError(f"exact queue number guarded to n <= {limit}, got {n}")
    if not g.edges:
        return 0
    pos = [-1] * n

    def feasible(target: int) -> bool:
        def extend(placed: list[int], iv: list[tuple[int, int]]) -> bool:
            if len(placed) == n:
                return True
            for v in g.vertices():
                if pos[v] >= 0:
                    continue
                pos[v] = len(placed)
                new_iv = iv
                added = []
                for w in g.adjacency[v]:
                    if pos[w] >= 0:
                        added.append((min(pos[w], pos[v]), max(pos[w], pos[v])))
                if added:
                    new_iv = iv + added
                placed.append(v)
                ok = not _closed_chain_exceeds(new_iv, target) and extend(placed, new_iv)
                placed.pop()
                pos[v] = -1
                if ok:
                    return True
            return False

        return extend([], [])

    q = 1
    while not feasible(q):
        q += 1
    return q
