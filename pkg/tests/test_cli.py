import json
import subprocess
import sys

import pytest

from conftest import corpus
from minpersist.cli import run
from minpersist.graph import DirectedGraph


@pytest.fixture
def write(tmp_path):
    def _write(name, content):
        path = tmp_path / name
        if isinstance(content, DirectedGraph):
            content = content.to_json()
        elif not isinstance(content, str):
            content = json.dumps(content)
        path.write_text(content)
        return str(path)

    return _write


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_seed(capsys, write, seed):
    code, out, _ = call(capsys, "check", write("g.json", seed))
    assert code == 0
    report = json.loads(out)
    assert report["isMinimallyPersistent"] is True
    assert report["dof"] == {"1": 2, "2": 1}


def test_check_false_property(capsys, write):
    square = DirectedGraph.build([(1, 2), (2, 3), (3, 4), (4, 1)])
    code, out, _ = call(capsys, "check", write("g.json", square))
    assert code == 1 and json.loads(out)["isMinimallyPersistent"] is False


def test_check_edge_list(capsys, write):
    code, _, _ = call(capsys, "check", write("g.txt", "# triangle\n2 1\n3 1\n3 2\n"))
    assert code == 0


def test_malformed_json_reports_position(capsys, write):
    code, out, err = call(capsys, "check", write("bad.json", '{"vertices": [1, 2],\n "edges": [[1 2]]}'))
    assert code == 2 and out == ""
    assert "line 2" in err and "column" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "/nonexistent/g.json"],
        ["frobnicate"],
        ["enumerate", "9"],
        ["decompose", "--mode", "Q", "x.json"],
    ],
)
def test_invalid_invocations(capsys, argv):
    assert call(capsys, *argv)[0] == 2


def test_decompose_triangle(capsys, write, triangle):
    code, out, _ = call(capsys, "decompose", "--mode", "A", write("g.json", triangle))
    plan = json.loads(out)
    assert code == 0
    assert plan["steps"] == [{"op": "RevStdVertexAdd", "args": {"i": 3}}]
    assert plan["final"] == {"vertices": [1, 2], "edges": [[2, 1]]}


def test_decompose_non_persistent_is_invalid(capsys, write):
    square = DirectedGraph.build([(1, 2), (2, 3), (3, 4), (4, 1)])
    assert call(capsys, "decompose", write("g.json", square))[0] == 2


def test_transform_underlying_mismatch(capsys, write, triangle, split4):
    code, out, err = call(
        capsys, "transform", write("a.json", triangle), write("b.json", split4),
        "--mode", "same-underlying",
    )
    assert code == 2 and "different" in err


def test_transform_and_replay(capsys, write, triangle, cycle3):
    a, b = write("a.json", triangle), write("b.json", cycle3)
    for extra in (["--mode", "same-underlying"], ["--ops", "A"], ["--ops", "T"]):
        code, out, _ = call(capsys, "transform", a, b, *extra)
        assert code == 0
        assert json.loads(out)["final"] == cycle3.to_dict()
        code, out, _ = call(capsys, "replay", write("p.json", out))
        assert code == 0 and json.loads(out)["ok"] is True


def test_replay_corrupted_step(capsys, write, triangle):
    _, out, _ = call(capsys, "decompose", write("g.json", triangle))
    plan = json.loads(out)
    plan["steps"][0]["args"]["i"] = 2
    code, out, _ = call(capsys, "replay", write("p.json", plan))
    assert code == 1 and json.loads(out)["step"] == 1


def test_replay_wrong_final(capsys, write, triangle):
    _, out, _ = call(capsys, "decompose", write("g.json", triangle))
    plan = json.loads(out)
    plan["final"] = {"vertices": [1, 2], "edges": [[1, 2]]}
    code, out, _ = call(capsys, "replay", write("p.json", plan))
    assert code == 1 and json.loads(out)["ok"] is False


def test_replay_empty_plan(capsys, write, seed):
    plan = {"initial": seed.to_dict(), "steps": [], "final": seed.to_dict()}
    code, out, _ = call(capsys, "replay", write("p.json", plan))
    assert code == 0 and json.loads(out) == {"ok": True, "steps": 0}


def test_replay_unknown_op_is_invalid(capsys, write, seed):
    plan = {"initial": seed.to_dict(), "steps": [{"op": "Warp", "args": {}}]}
    assert call(capsys, "replay", write("p.json", plan))[0] == 2


def test_construct_modes(capsys, write, cycle3):
    g = write("g.json", cycle3)
    for mode in ("A", "T"):
        code, out, _ = call(capsys, "construct", "--mode", mode, g)
        assert code == 0 and json.loads(out)["final"] == cycle3.to_dict()


def test_enumerate_outputs(capsys):
    code, out, _ = call(capsys, "enumerate", "3")
    lines = out.splitlines()
    assert code == 0 and json.loads(lines[0])["count"] == 8 and len(lines) == 9
    _, out, _ = call(capsys, "enumerate", "4", "--rigid")
    assert json.loads(out.splitlines()[0])["count"] == 6
    _, out, _ = call(capsys, "enumerate", "3", "--stuck")
    assert json.loads(out.splitlines()[0])["count"] == 2


def test_random_and_verbose(capsys):
    code, out, err = call(capsys, "-v", "random", "5", "--seed", "42")
    g = DirectedGraph.from_dict(json.loads(out))
    assert code == 0 and len(g.edges) == 7 and "7 edges" in err
    assert call(capsys, "random", "5", "--seed", "42")[1] == out


def test_output_is_byte_stable(capsys, write):
    g = write("g.json", corpus(5).graphs[1234])
    first = call(capsys, "decompose", "--mode", "T", g)[1]
    second = call(capsys, "decompose", "--mode", "T", g)[1]
    assert first == second and first.endswith("\n")


@pytest.mark.parametrize("n", [2, 3, 4, pytest.param(5, marks=pytest.mark.slow)])
def test_pipeline_over_corpus(capsys, write, n):
    for g in corpus(n):
        path = write("g.json", g)
        assert call(capsys, "check", path)[0] == 0
        for mode in ("A", "T"):
            _, out, _ = call(capsys, "decompose", "--mode", mode, path)
            assert call(capsys, "replay", write("p.json", out))[0] == 0


def test_module_entry_point(tmp_path, seed):
    path = tmp_path / "g.json"
    path.write_text(seed.to_json())
    proc = subprocess.run(
        [sys.executable, "-m", "minpersist", "check", str(path)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["isMinimallyPersistent"] is True
