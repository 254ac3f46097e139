import csv
import json

import pytest

from ggasp import io
from ggasp.cli import EXIT_ERROR, EXIT_NONE, EXIT_OK, EXIT_VIOLATED, choose_method, main
from ggasp.model import Assignment
from ggasp.reductions import Mmm, RainbowPath, fixture, generate, source_to_dict
from ggasp.stability import Concept


@pytest.fixture
def files(tmp_path):
    def write(name, payload):
        path = tmp_path / name
        io.write_json(path, payload)
        return str(path)

    return write


@pytest.fixture
def ex1(files):
    return files("ex1.json", io.instance_to_dict(fixture("empty_core")))


@pytest.fixture
def bbv(files):
    return files("pi.json", io.assignment_to_dict(Assignment.of("b", "b", None)))


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_check_nash(capsys, ex1, bbv):
    code, out = run(capsys, "check", "--instance", ex1, "--assignment", bbv, "--concept", "nash")
    assert code == EXIT_OK
    report = json.loads(out.out)
    assert report["stable"] and report["core_stable"] is None


def test_check_core_gives_witness(capsys, ex1, bbv):
    code, out = run(capsys, "check", "--instance", ex1, "--assignment", bbv, "--concept", "core")
    assert code == EXIT_VIOLATED
    witness = json.loads(out.out)["core_witness"]
    assert witness["coalition"] == [1, 2] and witness["activity"] == "a"


def test_check_truncated_json(capsys, tmp_path, bbv):
    bad = tmp_path / "bad.json"
    bad.write_text('{"players": 3, "edges": [[0, 1]')
    code, out = run(capsys, "check", "--instance", str(bad), "--assignment", bbv)
    assert code == EXIT_ERROR
    assert out.err.startswith("error:")


def test_check_missing_file(capsys, bbv):
    code, _ = run(capsys, "check", "--instance", "/nonexistent.json", "--assignment", bbv)
    assert code == EXIT_ERROR


def test_solve_stalker(capsys, files):
    path = files("stalker.json", io.instance_to_dict(fixture("stalker")))
    code, out = run(capsys, "solve", "--instance", path, "--concept", "nash")
    assert code == EXIT_NONE
    assert json.loads(out.out)["status"] == "NONE_EXISTS"


def test_solve_path_writes_verified_assignment(capsys, ex1, tmp_path):
    target = tmp_path / "out.json"
    code, _ = run(capsys, "solve", "--instance", ex1, "--method", "path", "--out", str(target))
    assert code == EXIT_OK
    pi = io.load_assignment(target, fixture("empty_core"))
    code, _ = run(capsys, "check", "--instance", ex1, "--assignment", str(target))
    assert code == EXIT_OK and len(pi) == 3


def test_solve_core_oracle(capsys, ex1):
    code, _ = run(capsys, "solve", "--instance", ex1, "--concept", "core", "--method", "oracle")
    assert code == EXIT_NONE


def test_solve_inapplicable_method(capsys, ex1):
    code, out = run(capsys, "solve", "--instance", ex1, "--method", "forest-copyable")
    assert code == EXIT_ERROR
    code, out = run(capsys, "solve", "--instance", ex1, "--concept", "core", "--method", "path")
    assert code == EXIT_ERROR


def test_solve_oracle_bound(capsys, ex1):
    code, out = run(capsys, "solve", "--instance", ex1, "--method", "oracle", "--max-oracle-n", "2")
    assert code == EXIT_ERROR and "max-oracle-n" in out.err


def test_solve_star_randomized(capsys, files):
    inst = generate(Mmm(["u1"], ["v1"], [("u1", "v1")], 1), Concept.NASH)
    path = files("star.json", io.instance_to_dict(inst))
    code, out = run(capsys, "solve", "--instance", path, "--method", "star", "--randomize", "--seed", "4")
    assert code == EXIT_OK
    assert json.loads(out.out)["method"] == "star-randomized"


def test_choose_method():
    assert choose_method(fixture("empty_core"), Concept.NASH) == "path"
    assert choose_method(fixture("empty_core"), Concept.CORE) == "oracle"
    assert choose_method(fixture("empty_core", copies=3), Concept.CORE) == "forest-copyable"
    assert choose_method(fixture("stalker"), Concept.IR) == "oracle"


def test_generate_rainbow(capsys, files, tmp_path):
    src = RainbowPath(["v1", "v2", "v3"], [("v1", "v2", "c1"), ("v2", "v3", "c2")], 1)
    path = files("src.json", source_to_dict(src))
    out = tmp_path / "inst.json"
    code, _ = run(capsys, "generate", "--family", "ns-path-rainbow", "--source", path, "--out", str(out))
    assert code == EXIT_OK
    raw = json.loads(out.read_text())
    assert raw["players"] == 10
    assert raw["provenance"]["family"] == "ns-path-rainbow"
    assert io.load_instance(out).n == 10


def test_generate_core_star(capsys, files, tmp_path):
    path = files("src.json", source_to_dict(Mmm(["u1"], ["v1"], [("u1", "v1")], 1)))
    out = tmp_path / "inst.json"
    code, _ = run(capsys, "generate", "--family", "core-star-mmm", "--source", path, "--out", str(out))
    assert code == EXIT_OK
    inst = io.load_instance(out)
    assert (inst.n, inst.p) == (4, 4)


def test_generate_rejects_bad_formula(capsys, files, tmp_path):
    raw = {"type": "sat3b2", "variables": ["x", "y"], "clauses": [["x", "x", "-y"], ["-x", "-x", "y"]]}
    path = files("src.json", raw)
    code, out = run(capsys, "generate", "--family", "ns-components-3sat", "--source", path,
                    "--out", str(tmp_path / "o.json"))
    assert code == EXIT_ERROR


def test_generate_family_mismatch(capsys, files, tmp_path):
    path = files("src.json", source_to_dict(Mmm(["u1"], ["v1"], [("u1", "v1")], 1)))
    code, _ = run(capsys, "generate", "--family", "ns-path-rainbow", "--source", path,
                  "--out", str(tmp_path / "o.json"))
    assert code == EXIT_ERROR


def test_bench_shape(capsys, tmp_path):
    out = tmp_path / "bench.csv"
    code, printed = run(capsys, "bench", "--suite", "paths", "--n", "12", "--p", "1..3",
                        "--repetitions", "2", "--out", str(out))
    assert code == EXIT_OK
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 3 * 2
    assert {r["verdict"] for r in rows} <= {"FOUND", "NONE_EXISTS"}
    assert all(float(r["elapsed"]) >= 0 for r in rows)
    assert printed.out.count("median=") == 3


def test_bench_is_deterministic(capsys, tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        run(capsys, "bench", "--suite", "stars", "--n", "8", "--p", "2", "--repetitions", "3",
            "--both-modes", "--out", str(path))
        outs.append([(r["instance_id"], r["method"], r["verdict"]) for r in json.loads(path.read_text())])
    assert outs[0] == outs[1]
    assert {m for _, m, _ in outs[0]} == {"star-derandomized", "star-randomized"}


def test_bad_arguments(capsys):
    assert main(["solve"]) == EXIT_ERROR
    assert main(["frobnicate"]) == EXIT_ERROR
    capsys.readouterr()
