"""Acceptance gate: every headline guarantee, checked end to end.

Each test prints one PASS/FAIL line so a full run reads as a checklist.
The sweep fixture drives the pipeline over three graph families at sizes
10..5000 and is shared by the structural criteria.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

import pytest

from helpers import (
    brute_min_queues_partition,
    nx_rotation,
    path_graph,
    random_layered_assignment,
    star_graph,
)
from septrack import (
    DisconnectedGraphError,
    GeneratorSpec,
    Graph,
    GraphError,
    TrackAssignment,
    ceil_log_three_halves,
    exact_queue_number,
    generate,
    min_queues_fixed_order,
    run_pipeline,
    validate_layering,
    validate_queue_layout,
    validate_separator_tree,
    verify_drawing,
    verify_no_xcrossing,
    volume_stats,
    wrap,
)
from septrack import documents as docs
from septrack.cli import _grid_shape

SIZES = (10, 50, 100, 500, 1000, 5000)
SEEDS = (0, 1, 2)
SWEEP_BUDGET_S = 600.0


@dataclass(frozen=True)
class SweepRun:
    family: str
    seed: int | None
    n: int
    graph: object
    result: object


def _report(capsys, label: str, ok: bool) -> None:
    with capsys.disabled():
        print(f"[{'PASS' if ok else 'FAIL'}] {label}", flush=True)


@pytest.fixture(scope="module")
def sweep():
    t0 = time.perf_counter()
    runs: list[SweepRun] = []
    for n in SIZES:
        specs: list[tuple[str, tuple[int, ...], int | None]] = [
            ("stacked_triangulation", (n,), None),
            ("grid", _grid_shape(n), None),
        ]
        specs += [("random_triangulation", (n,), s) for s in SEEDS]
        for family, args, seed in specs:
            g, rot = generate(GeneratorSpec(family, args, seed=seed))
            res = run_pipeline(g, rot)
            runs.append(SweepRun(family, seed, n, g, res))
    return runs, time.perf_counter() - t0


def test_criterion_1_track_and_queue_bounds(sweep, capsys):
    runs, elapsed = sweep
    ok = False
    try:
        assert len(runs) == len(SIZES) * (2 + len(SEEDS))
        for run in runs:
            c = ceil_log_three_halves(run.n)
            r = run.result.report
            assert r.track_count <= 6 * c + 6, (run.family, run.seed, run.n)
            assert r.queue_count <= max(r.track_count - 1, 0), \
                (run.family, run.seed, run.n)
            assert r.ok
        assert elapsed < SWEEP_BUDGET_S
        ok = True
    finally:
        _report(capsys,
                f"criterion 1: tracks <= 6*ceil(log3/2 n)+6 and queues <= "
                f"tracks-1 on {len(runs)} instances in {elapsed:.1f}s", ok)


def test_criterion_2_separator_tree_invariants(sweep, capsys):
    runs, _ = sweep
    ok = False
    try:
        for run in runs:
            res = run.result
            st, layering = res.septree, res.layering
            c = ceil_log_three_halves(run.n)
            assert st.height <= c + 1, (run.family, run.n)
            for nd in st.nodes:
                per_layer: dict[int, int] = {}
                for v in nd.vertices:
                    per_layer[layering.layer_of[v]] = \
                        per_layer.get(layering.layer_of[v], 0) + 1
                cap = st.ell if nd.is_leaf else 2
                assert all(k <= cap for k in per_layer.values()), nd.index
                if not nd.is_leaf:
                    for ci in nd.children:
                        child = st.nodes[ci]
                        assert 3 * len(child.component) <= 2 * len(nd.component)
            # an edge crossing some node's separator would join vertices in
            # disjoint subtrees; every edge must stay on one root path
            depth_of = [st.nodes[i].depth for i in range(len(st.nodes))]
            parent_of = [st.nodes[i].parent for i in range(len(st.nodes))]
            for u, v in res.layout_edges:
                a, b = st.node_of_vertex[u], st.node_of_vertex[v]
                while depth_of[a] > depth_of[b]:
                    a = parent_of[a]
                while depth_of[b] > depth_of[a]:
                    b = parent_of[b]
                assert a == b, (u, v)
            target = res.triangulation.graph if res.triangulation else run.graph
            validate_separator_tree(target, layering, st, exact_components=True)
        ok = True
    finally:
        _report(capsys,
                "criterion 2: separator trees balanced, <= 2 per layer, "
                "height-bounded, no crossing edges (exact re-validation)", ok)


def test_criterion_3_no_xcrossings_before_or_after_wrap(sweep, capsys):
    runs, _ = sweep
    ok = False
    try:
        for run in runs:
            res = run.result
            assert verify_no_xcrossing(res.intermediate, res.layout_edges) == []
            assert verify_no_xcrossing(res.final, res.layout_edges) == []
        ok = True
    finally:
        _report(capsys,
                "criterion 3: no X-crossings in the intermediate or wrapped "
                "assignments", ok)


def test_criterion_4_wrapping_properties(capsys):
    ok = False
    rng = random.Random(2024)
    t0 = time.perf_counter()
    trials = 500
    try:
        for _ in range(trials):
            ell = rng.choice([1, 2, 3])
            p = rng.randint(1, 30)
            groups, edges, layer_of = random_layered_assignment(
                rng, ell, p, rng.randint(10, 200))
            t = TrackAssignment(
                keys=tuple(sorted(groups)),
                sequences=tuple(tuple(groups[k]) for k in sorted(groups)),
            )
            w = wrap(t, ell, edges)
            assert w.track_count <= 3 * ell
            assert verify_no_xcrossing(w, edges) == []
            assert sorted(w.flat_order()) == sorted(t.flat_order())
            for wi, key in enumerate(w.keys):
                lmod, k = key
                seq = w.sequences[wi]
                marks = [(layer_of[v], t.position_of[v]) for v in seq]
                assert marks == sorted(marks)  # rules (1) and (2)
                assert all(layer_of[v] % 3 == lmod and t.key_of(v)[1] == k
                           for v in seq)
                for x, y in zip(seq, seq[1:]):
                    gap = layer_of[y] - layer_of[x]
                    assert gap == 0 or (gap > 0 and gap % 3 == 0)
        elapsed = time.perf_counter() - t0
        assert elapsed < 30.0
        ok = True
    finally:
        _report(capsys,
                f"criterion 4: wrapping keeps order rules, <= 3*ell tracks, "
                f"layer gaps of 3 on {trials} random layered assignments in "
                f"{time.perf_counter() - t0:.1f}s", ok)


def test_criterion_5_queue_layouts_and_counters(sweep, planar_corpus, capsys):
    runs, _ = sweep
    ok = False
    rng = random.Random(77)
    pairs = 0
    checked = 0
    try:
        for run in runs:
            assert validate_queue_layout(run.graph, run.result.queues) == []
        for g, rot in planar_corpus:
            res = run_pipeline(g, rot)
            assert validate_queue_layout(g, res.queues) == []
            assert exact_queue_number(g) <= res.queues.queue_count
            checked += 1
        assert checked >= 200
        while pairs < 500:
            n = rng.randint(1, 6)
            pool = [(a, b) for a in range(n) for b in range(a + 1, n)]
            rng.shuffle(pool)
            g = Graph.from_edges(n, pool[:rng.randint(0, min(10, len(pool)))])
            order = list(range(n))
            rng.shuffle(order)
            assert min_queues_fixed_order(g, order) == \
                brute_min_queues_partition(g, order)
            pairs += 1
        ok = True
    finally:
        _report(capsys,
                f"criterion 5: pipeline queue layouts valid; exact counter <= "
                f"pipeline on {checked} planar graphs; fixed-order counter "
                f"matches brute force on {pairs} pairs", ok)


def test_criterion_6_drawings_and_volume(sweep, capsys):
    runs, _ = sweep
    ok = False
    ratios: dict[tuple[str, int | None], dict[int, float]] = {}
    try:
        for run in runs:
            d = run.result.drawing()
            assert verify_drawing(run.graph, d) == []
            vs = volume_stats(d)
            t = run.result.final.track_count
            assert vs.x <= t
            assert vs.y <= (t - 1) ** 2 + 1
            ratios.setdefault((run.family, run.seed), {})[run.n] = \
                vs.volume / (run.n * ceil_log_three_halves(run.n))
        for lineage, by_n in ratios.items():
            assert by_n[5000] < 10 * by_n[100], (lineage, by_n)
        ok = True
    finally:
        _report(capsys,
                "criterion 6: drawings verified collision-free; x <= tracks, "
                "y <= (tracks-1)^2+1, volume/(n log n) growth < 10x from "
                "n=100 to n=5000", ok)


def test_criterion_7_degenerate_inputs_and_formats(tmp_path, capsys):
    ok = False
    try:
        one = run_pipeline(Graph.from_edges(1, []))
        assert one.report.track_count == 1
        assert one.report.queue_count == 0
        assert one.septree.height == 1
        assert one.drawing().positions == ((0, 0, 1),)

        two = run_pipeline(Graph.from_edges(2, [(0, 1)]))
        assert two.report.track_count == 2
        assert two.report.queue_count == 1
        assert verify_drawing(Graph.from_edges(2, [(0, 1)]), two.drawing()) == []

        for tree in (path_graph(7), star_graph(6)):
            res = run_pipeline(tree, nx_rotation(tree))
            assert res.report.ok
            assert validate_queue_layout(tree, res.queues) == []

        with pytest.raises(DisconnectedGraphError):
            run_pipeline(Graph.from_edges(4, [(0, 1), (2, 3)]))
        with pytest.raises(GraphError):
            run_pipeline(Graph.from_edges(0, []))

        g, rot = generate(GeneratorSpec("grid", (3, 4)))
        res = run_pipeline(g, rot)
        gp, lp, dp = (str(tmp_path / x) for x in ("g.json", "l.json", "d.json"))
        docs.save_graph(gp, g, rot)
        docs.save_layout(lp, res)
        docs.save_drawing(dp, res.drawing())
        g2, rot2, _ = docs.load_graph(gp)
        assert g2.edges == g.edges and rot2.rotations == rot.rotations
        final, queues, septree, layering, report = docs.load_layout(lp, g2)
        assert final.keys == res.final.keys
        assert final.sequences == res.final.sequences
        assert report == res.report
        assert docs.check_layout(g2, rot2, final, queues, septree,
                                 layering, report) == []
        assert docs.load_drawing(dp, g2).positions == res.drawing().positions
        ok = True
    finally:
        _report(capsys,
                "criterion 7: single vertex/edge, trees, disconnected "
                "rejection, and document round-trips all behave", ok)


def test_criterion_8_large_instance_wall_time(capsys):
    ok = False
    t0 = time.perf_counter()
    try:
        g, rot = generate(GeneratorSpec("stacked_triangulation", (5000,)))
        res = run_pipeline(g, rot)
        tri_graph = res.triangulation.graph
        assert validate_layering(tri_graph, res.layering) == []
        validate_separator_tree(tri_graph, res.layering, res.septree,
                                exact_components=True)
        assert verify_no_xcrossing(res.intermediate, res.layout_edges) == []
        assert verify_no_xcrossing(res.final, res.layout_edges) == []
        assert validate_queue_layout(g, res.queues) == []
        assert res.report.ok
        elapsed = time.perf_counter() - t0
        assert elapsed < 60.0
        ok = True
    finally:
        _report(capsys,
                f"criterion 8: n=5000 layout plus full verification in "
                f"{time.perf_counter() - t0:.1f}s (< 60s)", ok)
