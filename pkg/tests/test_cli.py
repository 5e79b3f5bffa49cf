import json
import subprocess
import sys
from pathlib import Path

from twistrb.cli import main

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_trb_pass(capsys):
    code, out, _ = run_cli(["check-trb", str(INSTANCES / "sl2_reynolds.json")], capsys)
    assert code == 0
    assert "verdict: pass" in out


def test_check_mc_agrees_with_check_trb(capsys):
    path = str(INSTANCES / "sl2_reynolds.json")
    code_mc, out_mc, _ = run_cli(["check-mc", path, "--json"], capsys)
    code_trb, out_trb, _ = run_cli(["check-trb", path, "--json"], capsys)
    assert code_mc == code_trb == 0
    mc = json.loads(out_mc)
    trb = json.loads(out_trb)
    assert mc["verdict"] == trb["verdict"]
    assert mc["direct"] is True and mc["maurer_cartan"] is True


def test_check_mc_fail_still_agrees(tmp_path, capsys):
    doc = json.loads((INSTANCES / "sl2_reynolds.json").read_text())
    doc["operator_T"] = [["2", "0", "0"], ["0", "2", "0"], ["0", "0", "2"]]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code_mc, out_mc, _ = run_cli(["check-mc", str(bad), "--json"], capsys)
    code_trb, out_trb, _ = run_cli(["check-trb", str(bad), "--json"], capsys)
    assert code_mc == code_trb == 1
    assert json.loads(out_mc)["verdict"] == json.loads(out_trb)["verdict"] == "fail"


def test_witt_report_full(capsys):
    code, out, _ = run_cli(["witt-report", "--nmax", "10"], capsys)
    assert code == 0
    rows = [l for l in out.splitlines() if l and l[0].isdigit()]
    assert len(rows) == 66
    assert "all pass: yes" in out


def test_ce_cohomology(capsys):
    code, out, _ = run_cli(
        ["ce-cohomology", str(INSTANCES / "sl2_reynolds.json"), "--nmax", "2", "--json"], capsys
    )
    assert code == 0
    assert json.loads(out)["dimensions"] == [0, 0, 0]


def test_cohomology_of_t(capsys):
    code, out, _ = run_cli(
        ["cohomology-of-t", str(INSTANCES / "heisenberg_derivation.json"), "--nmax", "2", "--json"],
        capsys,
    )
    assert code == 0
    assert json.loads(out)["dimensions"] == [1, 4, 5]


def test_reynolds_commands(capsys):
    path = str(INSTANCES / "heisenberg_derivation.json")
    code, out, _ = run_cli(["check-reynolds", path], capsys)
    assert code == 0
    code, out, _ = run_cli(["reynolds-from-derivation", path, "--json"], capsys)
    assert code == 0
    assert json.loads(out)["operator"] == [["1", "0", "0"], ["0", "1", "0"], ["-1", "0", "1"]]


def test_check_r_matrix(capsys):
    code, out, _ = run_cli(
        ["check-r-matrix", str(INSTANCES / "abelian3_twisted_rmatrix.json"), "--json"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "pass"
    assert payload["dual_bracket"]["values"] == {"[1,2]": ["0", "0", "1"]}


def test_check_tgcs(capsys):
    code, out, _ = run_cli(["check-tgcs", str(INSTANCES / "dim1_gcs.json"), "--json"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["direct"] is True
    assert all(payload["equations"].values())


def test_ns_round_trip(tmp_path, capsys):
    code, out, _ = run_cli(
        ["ns-from", "nijenhuis", str(INSTANCES / "affine_hinv.json"), "--json"], capsys
    )
    assert code == 0
    ns = json.loads(out)["ns_lie"]
    ns_path = tmp_path / "ns.json"
    ns_path.write_text(json.dumps({"ns_lie": ns}))
    code, out, _ = run_cli(["check-ns", str(ns_path)], capsys)
    assert code == 0
    code, out, _ = run_cli(["trb-from-ns", str(ns_path), "--json"], capsys)
    assert code == 0


def test_ns_from_assoc(capsys):
    code, out, _ = run_cli(
        ["ns-from", "assoc", str(INSTANCES / "assoc_upper_triangular.json"), "--json"], capsys
    )
    assert code == 0
    assert json.loads(out)["verdict"] == "pass"


def test_deform_check(capsys):
    code, out, _ = run_cli(["deform-check", str(INSTANCES / "affine_hinv.json")], capsys)
    assert code == 0
    assert "order 1 defect zero: pass" in out


def test_nijenhuis_element(capsys):
    code, out, _ = run_cli(
        ["nijenhuis-element", str(INSTANCES / "affine_hinv.json"), "--x", "0,0"], capsys
    )
    assert code == 0


def test_rigidity_probe_exit_code_matches_verdict(capsys):
    code, out, _ = run_cli(
        ["rigidity-probe", str(INSTANCES / "affine_hinv.json"), "--json"], capsys
    )
    payload = json.loads(out)
    assert (code == 0) == (payload["verdict"] == "sufficient condition established")


def test_gauge_and_shift(capsys):
    path = str(INSTANCES / "affine_hinv.json")
    code, out, _ = run_cli(["gauge", path, "--b", "[[0,0],[0,0]]", "--json"], capsys)
    assert code == 0
    assert json.loads(out)["operator"] == [["1", "-1"], ["0", "1"]]
    code, out, _ = run_cli(["shift", path, "--h", "[[0,0],[0,0]]", "--json"], capsys)
    assert code == 0


def test_validate_fail_exit_one(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"lie_algebra": {"dim": 2, "brackets": {"[1,2]": ["1", "0"], "[2,1]": ["1", "0"]}}}))
    code, out, _ = run_cli(["validate", str(bad)], capsys)
    assert code == 1
    assert "FAIL" in out


def test_invalid_input_exit_two(tmp_path, capsys):
    code, _, err = run_cli(["check-trb", "/nonexistent/file.json"], capsys)
    assert code == 2
    missing = tmp_path / "missing.json"
    missing.write_text(json.dumps({"lie_algebra": {"dim": 1, "brackets": {}}}))
    code, _, err = run_cli(["check-trb", str(missing)], capsys)
    assert code == 2
    assert "missing" in err
    garbled = tmp_path / "garbled.json"
    garbled.write_text("{not json")
    code, _, err = run_cli(["validate", str(garbled)], capsys)
    assert code == 2


def test_reports_are_byte_identical(capsys):
    args = ["check-mc", str(INSTANCES / "sl2_reynolds.json"), "--json", "--seed", "7"]
    _, first, _ = run_cli(args, capsys)
    _, second, _ = run_cli(args, capsys)
    assert first == second
    assert json.loads(first)["seed"] == 7


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "twistrb.cli", "witt-report", "--nmax", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "all pass: yes" in proc.stdout
