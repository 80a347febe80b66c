import json

import pytest

from dgraphs import zoo
from dgraphs.cli import main
from dgraphs.complex_core import read_graph, write_graph


@pytest.fixture
def graph_file(tmp_path):
    def make(g, name="g.json"):
        path = tmp_path / name
        write_graph(g, path)
        return str(path)
    return make


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def record(out: str) -> dict:
    return json.loads(out)


def test_generate_list(capsys):
    code, out, _ = run(capsys, "generate", "--list")
    assert code == 0
    assert "octahedron" in out and "Sphere(2)" in out


def test_generate_to_stdout_and_file(capsys, tmp_path):
    code, out, _ = run(capsys, "generate", "cyclic", "6")
    assert code == 0 and json.loads(out)["vertices"] == list(range(6))
    path = tmp_path / "w.json"
    dot = tmp_path / "w.dot"
    code, out, _ = run(capsys, "generate", "wheel", "--seed", "4", "-o", str(path), "--dot", str(dot))
    assert code == 0 and record(out)["seed"] == 4
    assert read_graph(path) == zoo.wheel(5)
    assert dot.read_text().startswith("graph")


def test_generate_errors(capsys):
    assert run(capsys, "generate", "nonsense")[0] == 2
    assert run(capsys, "generate", "cyclic", "x")[0] == 2
    assert run(capsys, "generate", "cyclic", "2")[0] == 2
    assert run(capsys, "generate")[0] == 2


def test_recognize_with_certificates(capsys, graph_file, tmp_path):
    certs = tmp_path / "certs"
    code, out, _ = run(capsys, "recognize", graph_file(zoo.wheel(5)), "--certs", str(certs))
    rec = record(out)
    assert code == 0 and rec["classification"]["label"] == "Ball(2)"
    assert (certs / "collapse.json").exists() and (certs / "shelling.json").exists()
    assert rec["seed"] == 0


def test_recognize_other_exits_one(capsys, graph_file):
    code, out, _ = run(capsys, "recognize", graph_file(zoo.windmill()))
    assert code == 1 and record(out)["classification"]["tag"] == "Other"


def test_bad_input_exits_two(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "recognize", str(bad))[0] == 2
    assert run(capsys, "recognize", str(tmp_path / "missing.json"))[0] == 2
    bad.write_text(json.dumps({"vertices": [0, 1], "edges": [[0, 0]]}))
    assert run(capsys, "hamilton", str(bad))[0] == 2


def test_hamilton_trace_and_replay(capsys, graph_file, tmp_path):
    gpath = graph_file(zoo.icosahedron())
    trace = tmp_path / "t.json"
    code, out, _ = run(capsys, "hamilton", gpath, "--strong", "--seed", "2", "--trace", str(trace),
                       "--oracle-check")
    rec = record(out)
    assert code == 0 and rec["verified"] and rec["strong"] and rec["oracle"] == "Found"
    assert rec["seed"] == 2
    code, out, _ = run(capsys, "hamilton", gpath, "--replay", str(trace))
    again = record(out)
    assert code == 0 and again["cycle"] == rec["cycle"] and again["trace_seed"] == 2


def test_hamilton_precondition_and_strong_failure(capsys, graph_file):
    code, out, _ = run(capsys, "hamilton", graph_file(zoo.windmill()))
    assert code == 1 and "does not apply" in record(out)["error"]
    code, out, _ = run(capsys, "hamilton", graph_file(zoo.projective_plane()), "--strong")
    rec = record(out)
    assert code == 1 and rec["verified"] and rec["strong_impossible"]


def test_oracle_commands(capsys, graph_file):
    oct_ = graph_file(zoo.octahedron())
    code, out, _ = run(capsys, "oracle", "count", oct_)
    assert code == 0 and record(out)["count"] == 16
    code, out, _ = run(capsys, "oracle", "hamiltonian", graph_file(zoo.goldner_harary(3)))
    assert code == 1 and record(out)["verdict"] == "NotHamiltonian"
    code, out, _ = run(capsys, "oracle", "shellable", oct_)
    assert code == 0 and len(record(out)["order"]) == 8
    code, out, _ = run(capsys, "oracle", "count", graph_file(zoo.icosahedron()), "--budget", "5")
    assert code == 1 and record(out)["verdict"] == "BudgetExceeded"


def test_refine_and_build(capsys, graph_file, tmp_path):
    oct_ = graph_file(zoo.octahedron())
    carrier = tmp_path / "carrier.json"
    code, out, _ = run(capsys, "refine", oct_, "--barycentric", "--carrier", str(carrier))
    assert code == 0 and len(json.loads(out)["vertices"]) == 26
    assert len(json.loads(carrier.read_text())) == 26
    code, out, _ = run(capsys, "refine", oct_, "--edge", "0,1")
    assert code == 0 and len(json.loads(out)["vertices"]) == 7
    assert run(capsys, "refine", oct_, "--edge", "0")[0] == 2
    assert run(capsys, "refine", oct_, "--edge", "0,2")[0] == 2
    code, out, _ = run(capsys, "build", graph_file(zoo.cyclic(4), "c4.json"), "--suspension")
    assert code == 0 and len(json.loads(out)["vertices"]) == 6
    code, out, _ = run(capsys, "build", oct_, "--join", graph_file(zoo.complete(1), "p.json"))
    assert code == 0 and len(json.loads(out)["vertices"]) == 7


def test_levelset(capsys, graph_file, tmp_path):
    g = graph_file(zoo.octahedron())
    code, out, _ = run(capsys, "levelset", g, "--c", "7/2", "--seed", "1")
    rec = record(out)
    assert code == 0 and rec["seed"] == 1 and "function" in rec
    f = tmp_path / "f.json"
    f.write_text(json.dumps({"values": {str(v): v for v in range(6)}}))
    code, out, _ = run(capsys, "levelset", g, "--f", str(f), "--c", "5/2")
    assert code == 0 and record(out)["level"] == "5/2"
    assert run(capsys, "levelset", g, "--f", str(f), "--c", "2")[0] == 2
    assert run(capsys, "levelset", g, "--c", "abc")[0] == 2


def test_bench_writes_csv_and_figures(capsys, tmp_path):
    out_dir = tmp_path / "bench"
    code, out, err = run(capsys, "bench", "--sizes", "4,24,64", "--out", str(out_dir),
                         "--max-slope", "10", "--min-r2", "0")
    rec = record(out)
    assert code == 0 and rec["rows"] == 3 and rec["within_bounds"]
    assert (out_dir / "bench_random_refined_sphere.csv").exists()
    for suffix in (".svg", ".png"):
        path = out_dir / f"bench_random_refined_sphere{suffix}"
        assert path.exists() and path.stat().st_size > 0
    assert "n=" in err


def test_bench_bounds_and_errors(capsys, tmp_path):
    code, out, _ = run(capsys, "bench", "--sizes", "4,24", "--out", str(tmp_path), "--no-figure",
                       "--quiet", "--max-slope", "-5")
    assert code == 1 and not record(out)["within_bounds"]
    assert "figures" not in record(out)
    assert run(capsys, "bench", "--family", "nope", "--out", str(tmp_path))[0] == 1
