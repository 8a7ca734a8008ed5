import json
import math
import subprocess
import sys

import pytest

from intervalkit.cli import main
from intervalkit.kaucher import KInterval, kmul


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out else None, err


@pytest.fixture
def problem(tmp_path):
    def write(doc, name="p.json"):
        p = tmp_path / name
        p.write_text(json.dumps(doc))
        return str(p)
    return write


def test_div_golden(capsys):
    code, out, _ = run(capsys, "div", "[0,1]", "[0,1]", "--semantics", "containment")
    assert code == 0 and out == '{"result":"entire"}\n'
    code, out, _ = run(capsys, "div", "[0,1]", "[0,1]", "--semantics", "setbased")
    assert code == 0 and out == '{"result":[0,"inf"]}\n'
    _, doc, _ = run_json(capsys, "div", "[1,2]", "[-1,1]")
    assert doc["result"] == [["-inf", -1], [1, "inf"]]


def test_kmul_golden(capsys):
    code, out, _ = run(capsys, "kmul", "[-1,1]", "[2,-3]")
    assert code == 0 and out == '{"result":[0,0]}\n'


def test_meet_and_dist(capsys):
    assert run_json(capsys, "meet", "[1,2]", "[3,4]")[1] == {"result": [3, 2]}
    assert run_json(capsys, "dist", "[0,1]", "[1,3]")[1] == {"result": 2}
    assert run_json(capsys, "dist", "[3,2]", "[3,2]")[1] == {"result": 0}


def test_eval(capsys):
    _, doc, _ = run_json(capsys, "eval", "x^2 - 2", "--x", "[1,2]")
    assert doc == {"result": [-1, 2]}
    _, doc, _ = run_json(capsys, "eval", "x^2 - 2", "--x", "[1,2]", "--deriv")
    assert doc == {"result": [-1, 2], "deriv": [2, 4]}


def test_linsolve_inner_tolerable_golden(capsys, problem):
    path = problem({"A": [[[0.9, 1.1]]], "b": [[0.5, 1.5]]})
    code, doc, _ = run_json(capsys, "linsolve", path, "--mode", "inner-tolerable")
    assert code == 0 and doc["status"] == "ok" and doc["verified"] is True
    (lo, hi), = doc["x"]
    assert abs(lo - 5 / 9) < 1e-10 and abs(hi - 15 / 11) < 1e-10


def test_linsolve_outer_united_with_preconditioning(capsys, problem):
    path = problem({"A": [[[1.8, 2.2]]], "b": [[2, 2]]})
    code, doc, _ = run_json(capsys, "linsolve", path, "--mode", "outer-united", "--precondition")
    assert code == 0 and doc["verified"]
    (lo, hi), = doc["x"]
    assert abs(lo - 8 / 9) < 1e-10 and abs(hi - 10 / 9) < 1e-10


def test_improper_is_a_mathematical_failure(capsys, problem):
    path = problem({"A": [[[0.9, 1.1]]], "b": [[1, 1]]})
    code, doc, _ = run_json(capsys, "linsolve", path, "--mode", "inner-tolerable")
    assert code == 1 and doc["status"] == "improper"
    (lo, hi), = doc["x"]
    assert abs(lo - 10 / 9) < 1e-10 and abs(hi - 10 / 11) < 1e-10


def test_not_contracting_is_a_mathematical_failure(capsys, problem):
    path = problem({"A": [[[3, 3]]], "b": [[1, 1]]})
    code, doc, _ = run_json(capsys, "linsolve", path, "--mode", "outer-united")
    assert code == 1 and doc["status"] == "not_contracting"


def test_verify(capsys, problem):
    ok = problem({"a": [1, 2], "b": [-1, 1], "c": [-1, 3], "x": [0, 1]})
    code, doc, _ = run_json(capsys, "verify", ok)
    assert code == 0 and doc == {"status": "ok", "ok": True, "residual": 0}
    bad = problem({"a": [1, 2], "b": [-1, 1], "c": [-1, 3], "x": [0, 2]}, "bad.json")
    code, doc, _ = run_json(capsys, "verify", bad)
    assert code == 1 and doc["status"] == "not_verified" and doc["residual"] > 0
    lin = problem({"A": [[[0.9, 1.1]]], "b": [[0.5, 1.5]], "x": [[5 / 9, 15 / 11]]}, "lin.json")
    code, doc, _ = run_json(capsys, "verify", lin)
    assert code == 0 and doc["ok"]


def test_member(capsys, problem):
    path = problem({"A": [[[0.9, 1.1]]], "b": [[1, 1]]})
    assert run_json(capsys, "member", path, "--point", "1.0", "--set", "united")[1]["member"] is True
    assert run_json(capsys, "member", path, "--point", "2.0", "--set", "united")[1]["member"] is False


def test_newton(capsys, problem):
    code, doc, _ = run_json(capsys, "newton", "--f", "x^2 - 2", "--x0", "[-2,2]")
    assert code == 0 and [b["status"] for b in doc["boxes"]] == ["UniqueZeroProven"] * 2
    path = problem({"f": "x^2 - 2", "X0": [1, 2]})
    code, doc, _ = run_json(capsys, "newton", path)
    (box,) = doc["boxes"]
    assert box["box"][0] <= math.sqrt(2) <= box["box"][1]


def test_sample_is_deterministic(capsys, problem):
    path = problem({"A": [[[0.9, 1.1], [0, 0.1]], [[-0.1, 0], [0.8, 1.2]]], "b": [[1, 2], [0, 1]]})
    first = run(capsys, "sample", path, "--n", "20", "--seed", "7")
    second = run(capsys, "sample", path, "--n", "20", "--seed", "7")
    assert first == second and first[0] == 0
    assert run(capsys, "sample", path, "--n", "20", "--seed", "8")[1] != first[1]


def test_infinite_endpoints_in_problem_files(capsys, problem):
    path = problem({"f": "x", "X0": ["-inf", 1]})
    code, _, err = run(capsys, "newton", path)
    assert code == 2 and "finite" in err


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["div", "[2,1]", "[0,1]"],
    ["div", "[0,1]", "[0,1]", "--semantics", "other"],
    ["eval", "x^-1", "--x", "[1,2]"],
    ["kmul", "[1,2]", "oops"],
    ["linsolve", "/nonexistent.json", "--mode", "outer-united"],
    ["newton", "--f", "x"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("intervalkit: error:")


def test_printed_intervals_reparse(capsys):
    a, b = "[0.1,0.7]", "[-0.3,0.9]"
    _, doc, _ = run_json(capsys, "kmul", a, b)
    lo, hi = doc["result"]
    assert KInterval(lo, hi) == kmul(KInterval(0.1, 0.7), KInterval(-0.3, 0.9))
    _, doc2, _ = run_json(capsys, "kmul", f"[{lo!r},{hi!r}]", "[1,1]")
    assert doc2 == doc


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "intervalkit", "kmul", "[-1,1]", "[2,-3]"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == '{"result":[0,0]}\n'
