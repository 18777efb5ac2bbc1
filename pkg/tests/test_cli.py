import json
import subprocess
import sys

import pytest

from locgal import io
from locgal.category import SetFunctor, category_of_poset
from locgal.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


@pytest.fixture
def example(tmp_path, capsys):
    def make(*args):
        status, out, _ = run(capsys, "example", *args)
        assert status == EXIT_OK
        path = tmp_path / ("-".join(args) + ".json")
        path.write_text(out)
        return str(path)
    return make


def test_points_of_laut_set_2(example, capsys):
    path = example("laut-set", "2")
    status, out, _ = run(capsys, "points", "--input", path)
    assert status == EXIT_OK
    assert out.splitlines()[0] == "2 points"
    status, out, _ = run(capsys, "points", "--input", path, "--format", "json")
    assert json.loads(out)["count"] == 2


def test_classifying_z3(example, capsys):
    path = example("group", "Z3")
    status, out, _ = run(capsys, "verify", "classifying", "--input", path)
    assert status == EXIT_OK
    doc = json.loads(out)
    suite = doc["suites"][0]
    assert suite["verdict"] == "pass"
    iso = next(t for t in suite["theorems"] if t["theorem"] == "point-group-iso")
    assert iso["stats"]["points"] == 3 and iso["stats"]["group_order"] == 3


def test_field_example_runs_default_suites(example, capsys):
    status, out, _ = run(capsys, "verify", "--input", example("field", "2", "4"), "--format", "text")
    assert status == EXIT_OK
    heads = [l.split(" ")[0] for l in out.splitlines() if not l.startswith(" ")]
    assert heads == ["classical", "localic", "fields"]


def test_assumption_violation_exits_nonzero(tmp_path, capsys):
    C = category_of_poset(["X", "Y"], lambda i, j: i <= j)
    maps = tuple((0, 1) if a.source == a.target == 0 else (0,) if a.source == a.target else (0, 0)
                 for a in C.arrows)
    F = SetFunctor(C, (("a", "b"), ("c",)), maps)
    path = tmp_path / "bad.json"
    path.write_text(io.dumps(io.category_to_json(C, F)))
    status, out, err = run(capsys, "verify", "assumption", "--input", str(path))
    assert status == EXIT_FAIL
    assert "theorem check failed" in err
    theorem = json.loads(out)["suites"][0]["theorems"][0]
    assert theorem["verdict"] == "fail"
    assert theorem["counterexamples"][0]["condition"] == "strict-epi"
    assert theorem["counterexamples"][0]["witness"]["arrow"] == "X<=Y"


def test_saturate_and_site_suite(example, capsys):
    path = example("laut-set", "2")
    status, out, _ = run(capsys, "saturate", "--input", path, "--mode", "minimal")
    assert status == EXIT_OK
    doc = json.loads(out)
    assert doc["mode"] == "minimal" and all("stage" in c for c in doc["covers"])
    status, out, _ = run(capsys, "verify", "--input", example("laut-set", "1"), "--suite", "site")
    assert status == EXIT_OK
    assert json.loads(out)["suites"][0]["suite"] == "site"


def test_export(example, capsys):
    status, out, _ = run(capsys, "export", "--input", example("group", "Z2"))
    assert status == EXIT_OK and out.startswith('digraph "diagram"')
    assert out.count("[label=") == 5


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["example", "laut-set", "x"], ["example", "group"],
                                  ["points"], ["verify", "nosuchsuite", "--input", "-"],
                                  ["points", "--input", "x", "--budget-points", "0"]])
def test_usage_errors(argv, capsys):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_budget_exhaustion(example, capsys):
    path = example("laut-set", "2")
    assert run(capsys, "saturate", "--input", path, "--budget-families", "1")[0] == EXIT_BUDGET
    assert run(capsys, "points", "--input", path, "--budget-points", "1")[0] == EXIT_BUDGET


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "site",\n "base": }')
    status, _, err = run(capsys, "points", "--input", str(bad))
    assert status == EXIT_INPUT
    assert f"{bad}:2:10" in err
    assert run(capsys, "points", "--input", str(tmp_path / "missing.json"))[0] == EXIT_INPUT
    bad.write_text('{"kind": "site", "base": {"elements": ["a"]}, "covers": []}')
    status, _, err = run(capsys, "points", "--input", str(bad))
    assert status == EXIT_INPUT and "site.base" in err


def test_outputs_are_byte_deterministic(example, capsys):
    path = example("group", "Z2")
    first = [run(capsys, *argv)[1] for argv in (["verify", "--input", path], ["saturate", "--input", path],
                                                 ["export", "--input", path])]
    again = [run(capsys, *argv)[1] for argv in (["verify", "--input", path], ["saturate", "--input", path],
                                                 ["export", "--input", path])]
    assert first == again
    assert run(capsys, "example", "group", "Z2")[1] == open(path).read()


def test_module_entry_point(tmp_path):
    out = tmp_path / "o.json"
    proc = subprocess.run([sys.executable, "-m", "locgal", "example", "laut-set", "1", "--output", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(out.read_text())["kind"] == "site"
