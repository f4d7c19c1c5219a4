import json
import subprocess
import sys

import jsonschema
import pytest

from powerdigraph import cli, report


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_json_g28_2(capsys):
    code, out, _ = run(capsys, "analyze", 28, 2, "--json")
    assert code == 0
    d = json.loads(out)
    jsonschema.validate(d, report.load_schema("analysis"))
    assert (d["split"]["t"], d["split"]["w"], d["trees"]["h0"]) == (7, 4, 2)
    assert d["cycles"]["total_cycles"] == 3
    assert d["aut"]["total_order"] == "2304"


def test_analyze_text(capsys):
    code, out, _ = run(capsys, "analyze", 10, 2)
    assert code == 0
    assert "t = 5  w = 2  h0 = 1  ell(t) = 4" in out
    assert "cycles = 2" in out
    code, out, _ = run(capsys, "analyze", 5, 1, "--text")
    assert "|Aut| = 120" in out and "cycles = 5" in out


@pytest.mark.parametrize("n, k", [(28, 2), (40, 4), (64, 6), (97, 5), (2, 1)])
def test_analysis_round_trips(n, k):
    r = report.analyze(n, k)
    d = json.loads(r.to_json())
    jsonschema.validate(d, report.load_schema())
    back = report.AnalysisReport.from_dict(d)
    assert back == r
    assert back.to_json() == r.to_json()


def test_big_orders_are_strings(capsys):
    _, out, _ = run(capsys, "analyze", 300, 1, "--json")
    d = json.loads(out)
    assert int(d["aut"]["total_order"]) > 2**1000
    assert isinstance(d["aut"]["total_order"], str)


def test_dot_exact_bytes(capsys):
    _, out, _ = run(capsys, "dot", 4, 2)
    assert out == "digraph G_4_2 {\n0 -> 0;\n1 -> 2;\n2 -> 0;\n3 -> 2;\n}\n"


def test_dot_loops_and_g28_2(capsys):
    _, out, _ = run(capsys, "dot", 6, 1)
    assert out.splitlines()[1:-1] == [f"{a} -> {a};" for a in range(6)]
    _, out, _ = run(capsys, "dot", 28, 2)
    assert len(out.splitlines()) == 30


def test_matrix_identity(capsys):
    _, out, _ = run(capsys, "matrix", 3, 1)
    assert out == "1 0 0\n0 1 0\n0 0 1\n"


def test_matrix_json_blocks(capsys):
    code, out, _ = run(capsys, "matrix", 28, 2, "--order", "canonical", "--format", "json")
    assert code == 0
    d = json.loads(out)
    jsonschema.validate(d, report.load_schema("matrix"))
    rows = d["rows"]
    block = lambda lo, hi: [r[lo:hi] for r in rows[lo:hi]]
    assert block(4, 16) == block(16, 28)
    assert all(sum(r[:4]) == 1 for r in rows[:4])
    _, out, _ = run(capsys, "matrix", 5, 2, "--order=natural", "--format=json")
    assert json.loads(out)["ordering"] == [0, 1, 2, 3, 4]


def test_polynomials(capsys):
    code, out, _ = run(capsys, "charpoly", 28, 2, "--check")
    assert code == 0 and out == "x^21*(x - 1)*(x^3 - 1)^2\noracle: agrees\n"
    code, out, _ = run(capsys, "minpoly", 28, 2, "--expand")
    assert code == 0 and out == "x^5 - x^2\n"


def test_cap_refusal_exit_code(capsys):
    code, _, err = run(capsys, "charpoly", 100, 3, "--check")
    assert code == 3 and "exceeds cap" in err
    code, _, _ = run(capsys, "minpoly", 30, 3, "--check", "--cap", "20")
    assert code == 3


def test_aut_json(capsys):
    code, out, _ = run(capsys, "aut", 28, 2, "--json", "--brute", "backtrack")
    assert code == 0
    d = json.loads(out)
    assert d["total_order"] == d["brute_force_order"] == "2304"
    d.pop("brute_force_order")
    jsonschema.validate(d, report.load_schema("aut"))


def test_cert(capsys):
    _, out, _ = run(capsys, "cert", 10, 2)
    assert out == "10|(())|1^1,4^1\n"


@pytest.mark.parametrize("args, want", [((10, 2, 10, 8), 0), ((28, 2, 28, 4), 1), ((11, 3, 11, 4), 0)])
def test_iso_exit_codes(capsys, args, want):
    code, out, _ = run(capsys, "iso", *args)
    assert code == want
    assert out.count("|") == 4


@pytest.mark.parametrize(
    "argv",
    [[], ["analyze", "1", "2"], ["analyze", "x", "2"], ["analyze", "5", "0"], ["bogus"], ["verify", "--max-n", "1"]],
)
def test_usage_errors(capsys, argv):
    assert cli.main(argv) == 2


def test_deterministic_output(capsys):
    outs = {run(capsys, "analyze", 60, 4, "--json")[1] for _ in range(2)}
    assert len(outs) == 1


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", 100)
    assert code == 0
    assert out.rstrip().splitlines()[-1].endswith("failures: 0")


@pytest.mark.parametrize("fault", ["indegree", "cycles", "levels", "charpoly"])
def test_verify_catches_injected_fault(capsys, fault):
    code, out, _ = run(
        capsys, "verify", "--max-n", 28, "--backtracking-samples", 2, "--max-root-group", 10, "--inject-fault", fault
    )
    assert code == 1
    assert "failures: 0" not in out.splitlines()[-1]
    assert "FAIL" in out


def test_verify_mutation_at_full_size(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", 100, "--inject-fault", "indegree")
    assert code == 1
    assert not out.rstrip().endswith("failures: 0")


def test_verify_fail_fast(capsys):
    code, out, _ = run(capsys, "verify", "--max-n", 28, "--fail-fast", "--inject-fault", "levels")
    assert code == 1
    lines = out.splitlines()
    assert lines[-1].endswith("failures: 1")
    assert "stopped at first failure (--fail-fast)" in lines


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "powerdigraph.cli", "iso", "28", "2", "28", "4"], capture_output=True, text=True
    )
    assert proc.returncode == 1
    assert "not isomorphic" in proc.stdout
