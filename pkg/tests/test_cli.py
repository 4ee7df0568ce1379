from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from steinberg_gz.cli import RunConfig, emit_report, main, render, run

GOLDEN = Path(__file__).parent / "golden"


def run_cli(args, tmp_path, name="report.json"):
    out = tmp_path / name
    code = main(list(args) + ["--out", str(out)])
    return code, out.read_text()


@pytest.mark.parametrize(
    "args, golden, code",
    [
        (["pi", "--in", "pi_input.json"], "pi.expected.json", 0),
        (["pi-inv", "--in", "pi_inv_input.json"], "pi_inv.expected.json", 0),
        (["steinberg", "--in", "steinberg_sl2_input.json"], "steinberg_sl2.expected.json", 0),
        (["branch", "--n", "7", "--m", "6"], "branch_7_6.expected.json", 0),
        (["gz-check", "--n", "2", "--samples", "3"], "gz_check_n2.expected.json", 0),
        (["pi", "--in", "not_lower_input.json"], "not_lower.expected.json", 2),
        (["pi", "--in", "malformed_input.json"], "malformed.expected.json", 2),
    ],
)
def test_golden_reports(args, golden, code, tmp_path, monkeypatch):
    monkeypatch.chdir(GOLDEN)
    got_code, text = run_cli(args, tmp_path)
    assert got_code == code
    assert text == (GOLDEN / golden).read_text()


def test_pi_example_content(tmp_path, monkeypatch):
    monkeypatch.chdir(GOLDEN)
    _, text = run_cli(["pi", "--in", "pi_input.json"], tmp_path)
    rep = json.loads(text)
    assert rep["result"]["values"] == {"1,1": "2", "2,1": "10", "2,2": "10"}
    assert {"command", "n", "seed", "paper_refs"} <= rep.keys()


def test_branch_multiplicity_one(tmp_path):
    code, text = run_cli(["branch", "--n", "7", "--m", "6"], tmp_path)
    rep = json.loads(text)
    assert code == 0
    assert rep["exponent"] == 0 and rep["multiplicity"] == "1"


@pytest.mark.parametrize("n", [2, 3, 5])
def test_pi_then_pi_inv_round_trip(n, tmp_path):
    code, text = run_cli(["pi", "--n", str(n), "--seed", "4"], tmp_path, "a.json")
    assert code == 0
    rep = json.loads(text)
    (tmp_path / "c.json").write_text(json.dumps(rep["result"]))
    code, text = run_cli(["pi-inv", "--in", str(tmp_path / "c.json")], tmp_path, "b.json")
    assert code == 0
    assert json.loads(text)["result"] == rep["input"]


def test_r_quotient_payload(tmp_path):
    u = {"n": 2, "entries": [["2", "0"], ["3", "5"]]}
    v = {"n": 2, "entries": [["1", "1"], ["0", "1"]]}
    (tmp_path / "uv.json").write_text(json.dumps({"u": u, "v": v}))
    code, text = run_cli(["r-quotient", "--in", str(tmp_path / "uv.json")], tmp_path)
    rep = json.loads(text)
    assert code == 0 and rep["agrees_with_pi"] is True


@pytest.mark.parametrize(
    "args",
    [
        ["gz-check", "--n", "2", "--samples", "4"],
        ["casimir", "--n", "2", "--samples", "2"],
        ["rank", "--n", "3"],
        ["steinberg", "--n", "4", "--seed", "9"],
        ["r-quotient", "--n", "3"],
        ["flow", "--n", "2", "--steps", "20"],
        ["lemma-suite", "--n", "2"],
    ],
)
def test_reports_are_byte_deterministic(args, tmp_path):
    c1, t1 = run_cli(args, tmp_path, "one.json")
    c2, t2 = run_cli(args, tmp_path, "two.json")
    assert c1 == c2 == 0
    assert t1 == t2
    assert t1.endswith("}\n")


@pytest.mark.parametrize("n", [1, 3])
def test_lemma_suite_passes(n, tmp_path):
    code, text = run_cli(["lemma-suite", "--n", str(n)], tmp_path)
    rep = json.loads(text)
    assert code == 0
    assert rep["failed"] == 0 and all(s["passed"] for s in rep["sections"])


def test_lemma_suite_mutation_reports_failures(tmp_path):
    code, text = run_cli(["lemma-suite", "--n", "3", "--mutate"], tmp_path)
    rep = json.loads(text)
    assert code == 1
    assert "gz-commutative" in rep["violations"]


def test_gz_check_mutation_exit_code(tmp_path):
    code, text = run_cli(["gz-check", "--n", "2", "--mutate"], tmp_path)
    assert code == 1
    assert json.loads(text)["violations"]


def test_max_n_env_caps_suite(tmp_path, monkeypatch):
    monkeypatch.setenv("STEINBERG_GZ_MAX_N", "2")
    code, text = run_cli(["lemma-suite", "--n", "3"], tmp_path)
    assert code == 2
    assert "STEINBERG_GZ_MAX_N" in json.loads(text)["error"]


@pytest.mark.parametrize(
    "args",
    [
        ["pi", "--n", "0"],
        ["gz-check", "--samples", "0"],
        ["not-a-command"],
        ["branch", "--n", "3", "--m", "3"],
        ["branch", "--n", "3", "--ell", "4"],
        ["flow", "--n", "2", "--dt", "-0.1"],
        ["flow", "--n", "2", "--hamiltonian", "q7"],
        ["pi", "--in", "/nonexistent/file.json"],
    ],
)
def test_input_errors_exit_2_with_report(args, tmp_path):
    code, text = run_cli(args, tmp_path)
    rep = json.loads(text)
    assert code == 2
    assert rep["error"] and rep["violations"] == []


def test_zero_denominator_rejected(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 2, "entries": [["1/0", "0"], ["3", "5"]]}')
    code, text = run_cli(["pi", "--in", str(bad)], tmp_path)
    assert code == 2 and "zero denominator" in json.loads(text)["error"]


def test_flow_trajectory_dump(tmp_path):
    traj = tmp_path / "traj.jsonl"
    code, text = run_cli(["flow", "--n", "2", "--steps", "10", "--traj", str(traj)], tmp_path)
    assert code == 0
    lines = traj.read_text().splitlines()
    assert len(lines) == 11
    rows = [json.loads(line) for line in lines]
    assert [r["step"] for r in rows] == list(range(11))
    assert all(len(r["chart"]) == 4 for r in rows)


def test_flow_casimir_exact_stationary(tmp_path):
    args = ["flow", "--n", "3", "--hamiltonian", "f3,1", "--exact", "--dt", "1/10", "--steps", "3"]
    code, text = run_cli(args, tmp_path)
    rep = json.loads(text)
    assert code == 0 and rep["stationary"] is True and rep["max_drift"] == 0.0


def test_flow_dt_zero_constant(tmp_path):
    code, text = run_cli(["flow", "--n", "2", "--dt", "0", "--steps", "4"], tmp_path)
    assert code == 0 and json.loads(text)["stationary"] is True


def test_empty_violations_serialize_as_list():
    assert '"violations": []' in render({"violations": []})


def test_emit_report_to_stdout(capsys):
    emit_report({"b": 1, "a": 2})
    assert capsys.readouterr().out == '{\n  "a": 2,\n  "b": 1\n}\n'


def test_run_returns_code_and_report():
    code, rep = run(RunConfig(command="rank", n=2))
    assert code == 0 and rep["bivector_rank"] == 2


def test_module_entry_point(tmp_path):
    out = tmp_path / "r.json"
    proc = subprocess.run(
        [sys.executable, "-m", "steinberg_gz", "branch", "--n", "4", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(out.read_text())["exponent"] == 0
