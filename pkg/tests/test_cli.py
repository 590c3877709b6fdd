"""Command-line interface: full verb pipeline, exit codes, failure paths."""

import json

import pytest

from septrack import cli


def run(args):
    return cli.main(list(args))


@pytest.fixture(scope="module")
def workdir(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("cli")
    paths = {
        "graph": str(tmp / "g.json"),
        "layout": str(tmp / "l.json"),
        "drawing": str(tmp / "d.json"),
        "svg": str(tmp / "t.svg"),
        "obj": str(tmp / "d.obj"),
        "csv": str(tmp / "runs.csv"),
    }
    return tmp, paths


def test_generate(workdir, capsys):
    _, paths = workdir
    assert run(["generate", "random_triangulation", "30", "--seed", "5",
                "--out", paths["graph"]]) == 0
    doc = json.loads(open(paths["graph"]).read())
    assert doc["format"] == "septrack-graph"
    assert len(doc["rotation"]) == 30


def test_layout(workdir, capsys):
    _, paths = workdir
    assert run(["layout", "--graph", paths["graph"], "--out", paths["layout"]]) == 0
    out = capsys.readouterr().out
    assert "tracks" in out and "queues" in out
    doc = json.loads(open(paths["layout"]).read())
    assert doc["format"] == "septrack-layout"


def test_verify(workdir, capsys):
    _, paths = workdir
    assert run(["verify", "--graph", paths["graph"], "--layout", paths["layout"]]) == 0
    out = capsys.readouterr().out
    assert "ok" in out and "FAIL" not in out


def test_draw_and_verify_drawing(workdir, capsys):
    _, paths = workdir
    assert run(["draw", "--graph", paths["graph"], "--layout", paths["layout"],
                "--out", paths["drawing"]]) == 0
    assert run(["verify", "--graph", paths["graph"],
                "--drawing", paths["drawing"]]) == 0
    out = capsys.readouterr().out
    assert "ok" in out


def test_render_svg_and_obj(workdir, capsys):
    _, paths = workdir
    assert run(["render", "--layout", paths["layout"], "--graph", paths["graph"],
                "--out", paths["svg"]]) == 0
    assert open(paths["svg"]).read().startswith("<svg")
    assert run(["render", "--drawing", paths["drawing"], "--graph", paths["graph"],
                "--out", paths["obj"]]) == 0
    assert any(line.startswith("l ") for line in open(paths["obj"]))


def test_experiment_csv(workdir, capsys):
    _, paths = workdir
    assert run(["experiment", "--families", "grid", "--sizes", "10", "50",
                "--out", paths["csv"]]) == 0
    rows = open(paths["csv"]).read().strip().splitlines()
    assert rows[0].startswith("family,seed,n,")
    assert len(rows) == 3  # header + two sizes, deterministic family ignores seeds
    for row in rows[1:]:
        cells = row.split(",")
        assert cells[0] == "grid"
        assert int(cells[5]) <= int(cells[6])  # tracks within bound


def test_experiment_stdout(capsys):
    assert run(["experiment", "--families", "stacked_triangulation",
                "--sizes", "10"]) == 0
    out = capsys.readouterr().out
    assert "family,seed,n," in out
    assert "stacked_triangulation,0,10," in out


def test_bad_family_exits_2(workdir, capsys):
    _, paths = workdir
    with pytest.raises(SystemExit) as exc:
        run(["generate", "moebius", "5", "--out", paths["graph"]])
    assert exc.value.code == 2


def test_missing_file_exits_1(tmp_path, capsys):
    assert run(["layout", "--graph", str(tmp_path / "absent.json")]) == 1
    err = capsys.readouterr().err
    assert err.startswith("error:")


def test_disconnected_graph_exits_1(tmp_path, capsys):
    from septrack import Graph, documents as docs

    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    p = tmp_path / "disc.json"
    docs.save_graph(str(p), g, None)
    assert run(["layout", "--graph", str(p)]) == 1
    assert "error:" in capsys.readouterr().err


def test_verify_tampered_layout_exits_1(workdir, capsys):
    tmp, paths = workdir
    doc = json.loads(open(paths["layout"]).read())
    doc["report"]["track_count"] += 1
    bad = tmp / "bad_layout.json"
    bad.write_text(json.dumps(doc))
    assert run(["verify", "--graph", paths["graph"], "--layout", str(bad)]) == 1
    out = capsys.readouterr()
    assert "error:" in out.err or "FAIL" in out.out


def test_render_requires_exactly_one_source(workdir, capsys):
    _, paths = workdir
    with pytest.raises(SystemExit) as exc:
        run(["render", "--layout", paths["layout"], "--drawing", paths["drawing"],
             "--out", paths["svg"]])
    assert exc.value.code == 2
