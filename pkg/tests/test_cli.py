import json
import subprocess
import sys

import pytest

from conecalc.cli import run
from conecalc.scenario import BUILTINS


def report(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


@pytest.mark.parametrize("name", BUILTINS)
def test_verify_builtins(capsys, name):
    code, rep = report(capsys, "verify", name)
    assert code == 0, [c for c in rep["checks"] if not c["passed"]]
    assert rep["passed"] and rep["scenario"] == name
    assert rep["seed"] == 20240607


def test_lattice_count_report(capsys):
    code, rep = report(capsys, "lattice-count", "cp2", "--d", "20")
    assert code == 0
    text = json.dumps(rep)
    assert "231" in text and "31/400" in text


def test_heckman_density_table(capsys):
    code, rep = report(capsys, "heckman", "cp2")
    assert code == 0
    table = {tuple(r["point"]): r["density"] for r in rep["result"]["density_table"]}
    assert table[("1/4", "1/4")] == "1"
    assert table[("1", "1")] == "0"
    assert len(rep["result"]["terms"]) == 3


def test_moments_series(capsys):
    code, rep = report(capsys, "moments", "cp2", "--order", "2")
    assert code == 0
    assert rep["result"]["series"].startswith("1/2*t^0 + -1/2*t^1")


def test_bg_and_cc(capsys):
    assert report(capsys, "bg", "trapezoid")[0] == 0
    assert report(capsys, "cc", "cp2")[0] == 0
    assert report(capsys, "cc", "cp2-w012")[0] == 0


def test_input_errors(capsys, tmp_path):
    assert run(["verify", "no-such-scenario"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(["verify", str(bad)]) == 2
    assert run(["lattice-count", "cp2-w012"]) == 2
    assert run(["plot", "cp2", "--window", "0:1"]) == 2
    assert run(["plot", "hexagon-gl3", "--measure", "bg"]) == 2
    err = capsys.readouterr().err
    assert "input error" in err


def test_failing_check_exits_one(capsys, tmp_path):
    assert run(["examples", str(tmp_path)]) == 0
    data = json.loads((tmp_path / "cp2.json").read_text())
    data["probes"][0]["density"] = "2"
    p = tmp_path / "wrong.json"
    p.write_text(json.dumps(data))
    capsys.readouterr()
    code, rep = report(capsys, "heckman", str(p))
    assert code == 1
    assert not rep["passed"]


def test_report_to_file(capsys, tmp_path):
    out = tmp_path / "r.json"
    assert run(["lattice-count", "cp2", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["command"] == "lattice-count"


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("CONECALC_SEED", "7")
    _, rep = report(capsys, "bg", "cp2")
    assert rep["seed"] == 7


def test_deterministic_reports(capsys):
    _, a = report(capsys, "verify", "square")
    _, b = report(capsys, "verify", "square")
    assert a == b


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "conecalc", "lattice-count", "cp1", "--d", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["passed"]
