import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from hurwitz_alex.alexmod import alexander_polynomial
from hurwitz_alex.cli import main
from hurwitz_alex.parsing import parse_presentation

GOLDEN = Path(__file__).parent / "golden"
UPDATE = os.environ.get("UPDATE_GOLDEN") == "1"

CASES = {
    "compute_g2": ["compute", "--builtin", "g2"],
    "compute_example_4_1": ["compute", "--builtin", "example_4_1", "--degree", "3"],
    "compute_free_2": ["compute", "--builtin", "free:2"],
    "realize_phi6": ["realize", "t^2 - t + 1"],
    "realize_pm_refusal": ["realize", "(t+1)^2"],
    "decompose_swap": ["decompose", "[[1,1],[0,-1]]"],
    "check_unknown": ["check", "(t-1)*Phi4^2", "--degree", "4", "--betti", "4"],
}


def run(args, capsys):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_json(name, capsys):
    code, out, _ = run(CASES[name] + ["--format", "json"], capsys)
    path = GOLDEN / f"{name}.json"
    if UPDATE:
        path.write_text(out)
    assert out == path.read_text()
    # bit-exact across runs
    assert run(CASES[name] + ["--format", "json"], capsys)[1] == out
    assert code == (3 if name == "realize_pm_refusal" else 0)


def test_compute_text(capsys):
    code, out, _ = run(["compute", "--builtin", "example_4_1"], capsys)
    assert code == 0 and out.startswith("Delta = t^2 - 2t + 1")
    code, out, _ = run(["compute", "--builtin", "g2"], capsys)
    assert "Delta = t^2 - 1" in out
    code, out, _ = run(["compute", "--builtin", "free:2"], capsys)
    assert out.splitlines()[0] == "Delta == 0 (infinite-dimensional)"


def test_compute_file_and_stdin(tmp_path, capsys, monkeypatch):
    f = tmp_path / "g.cg"
    f.write_text("cgroup m=3\nx3 = x1^-1 x2 x1\nx3 = x1^-1 x3 x2 x3^-1 x1\n")
    code, out, _ = run(["compute", str(f)], capsys)
    assert code == 0 and "Delta = t^2 - 2t + 1" in out
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO(f.read_text()))
    code, out, _ = run(["compute", "-"], capsys)
    assert code == 0 and "Delta = t^2 - 2t + 1" in out


@pytest.mark.parametrize("args,code", [
    (["compute", "cgroup m=2\nx1 = x2 x1"], 2),
    (["compute", "--builtin", "nope"], 2),
    (["compute"], 2),
    (["realize", "t^2 -"], 2),
    (["realize", "(t+1)^2"], 3),
    (["realize", "t^2 - 2"], 3),
    (["realize", "(t-1)*Phi4^2"], 3),
    (["realize", "Phi9*(t-1)", "--max-generators", "5"], 3),
    (["realize", "0"], 3),
    (["decompose", "[[1,1],[0,1]]"], 3),
    (["decompose", "[[1,2,3]]"], 3),
    (["decompose", "[[1,"], 2),
    (["check", "t^"], 2),
    (["realize", "1"], 0),
    (["check", "(t-1)^2", "--degree", "2", "--components", "2"], 0),
    (["decompose", "2: 1 0 0 1"], 0),
])
def test_exit_codes(args, code, capsys):
    assert run(args, capsys)[0] == code


def test_parse_error_reports_position(capsys):
    code, _, err = run(["compute", "cgroup m=2\nx1 = x2 x1"], capsys)
    assert code == 2 and "line 2, column 6" in err
    code, out, _ = run(["compute", "cgroup m=2\nx1 = x2 x1", "--format", "json"], capsys)
    payload = json.loads(out)
    assert payload["error"]["line"] == 2 and payload["error"]["column"] == 6


def test_refusal_names_theorem_3(capsys):
    code, _, err = run(["realize", "(t+1)^2"], capsys)
    assert code == 3 and "Theorem 3" in err and "n = 0 < k = 2" in err


@pytest.mark.parametrize("target", ["t^2 - t + 1", "1", "(t-1)*(t+1)*Phi6", "(t-1)^2*(t+1)"])
def test_report_roundtrip(target, capsys):
    """Re-parsing the embedded presentation reproduces the stated Δ."""
    code, out, _ = run(["realize", target, "--format", "json"], capsys)
    cert = json.loads(out)["output"]["certificate"]
    g = parse_presentation(cert["presentation"]["text"])
    assert str(alexander_polynomial(g).delta) == cert["computed_delta"]["text"]
    assert cert["verified"] is True
    # and `compute` on that text says the same
    code, out, _ = run(["compute", cert["presentation"]["text"], "--format", "json"], capsys)
    assert json.loads(out)["output"]["delta"] == cert["computed_delta"]["text"]


def test_decompose_report(capsys):
    code, out, _ = run(["decompose", "[[0,1],[1,0]]", "--format", "json"], capsys)
    rep = json.loads(out)["output"]
    assert rep["counts"] == [0, 0, 1] and rep["conjugation_check"] is True
    assert rep["semidirect"]["abelianization"] == "Z^2"


def test_demo(capsys):
    code, out, _ = run(["demo", "--seed", "3"], capsys)
    assert code == 0
    assert "FAIL" not in out.split("command:")[0]


def test_console_script_entry():
    r = subprocess.run([sys.executable, "-m", "hurwitz_alex", "compute", "--builtin", "g2"],
                       capture_output=True, text=True, timeout=60)
    assert r.returncode == 0 and "Delta = t^2 - 1" in r.stdout
