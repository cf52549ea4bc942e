"""The command-line surface: worked invocations, exit codes, JSON mode,
and determinism."""

import json
import subprocess
import sys

import pytest

from ascoder import ops
from ascoder.cli import main
from ascoder.schemas import DemoRequest

ALPHA_INV = "t^-3 + 1 + t + t^2"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_vhat_example(capsys):
    code, out, _ = run_cli(capsys, "vhat", "--field", "3", ALPHA_INV)
    assert code == 0 and out.strip() == "Finite(1)"


def test_vt_output(capsys):
    code, out, _ = run_cli(capsys, "vt", "--field", "3", ALPHA_INV)
    assert code == 0 and out.strip() == "Finite(-3)"
    code, out, _ = run_cli(capsys, "vt", "--field", "3", "0")
    assert out.strip() == "AtLeast(inf)"


def test_eval_normalizes(capsys):
    code, out, _ = run_cli(capsys, "eval", "--field", "3", "t+t -   t^2+1")
    assert code == 0 and out.strip() == "1 + 2*t + 2*t^2"


def test_eval_json_matches_documented_schema(capsys):
    code, out, _ = run_cli(capsys, "eval", "--field", "3", "--json", ALPHA_INV)
    assert json.loads(out) == {
        "field": "3", "prec": None,
        "coeffs": [[-3, "1"], [0, "1"], [1, "1"], [2, "1"]]}


def test_choose_n_example(capsys):
    code, out, _ = run_cli(capsys, "choose-n", "--field", "3",
                           "--alpha-inv", ALPHA_INV)
    assert code == 0 and out.strip() == "{C: 3, D: 1, k: 0, N: 2}"


def test_choose_n_case_one_text_omits_d(capsys):
    code, out, _ = run_cli(capsys, "choose-n", "--field", "3", "--alpha", "t")
    assert code == 0 and out.strip() == "{C: 1, k: 0, N: 1}"


def test_check_example(capsys):
    code, out, _ = run_cli(capsys, "check", "--field", "3", "--alpha", "t",
                           "--m", "4", "--n", "4")
    assert code == 0 and out.strip() == "true"


def test_scan_json_example(capsys):
    code, out, _ = run_cli(capsys, "scan", "--field", "3",
                           "--alpha-inv", ALPHA_INV,
                           "--N", "1", "--bound", "4", "--json")
    assert code == 0
    body = json.loads(out)
    assert body["bound"] == 4 and body["checked"] == 16
    assert [2, 1, True, False] in body["mismatches"]


def test_scan_text_mode(capsys):
    code, out, _ = run_cli(capsys, "scan", "--field", "3",
                           "--alpha-inv", ALPHA_INV, "--N", "1", "--bound", "2")
    assert code == 0
    assert "1 mismatch(es)" in out
    assert "(m=2, n=1): coding=true oracle=false" in out


def test_solve_as_witness(capsys):
    code, out, _ = run_cli(capsys, "solve-as", "--field", "3", "--prec", "55",
                           f"({ALPHA_INV})^2 - ({ALPHA_INV})")
    assert code == 0
    assert out.startswith("Solvable")
    assert "t^-2 + t^-1 + 2*t + t^2 + 2*t^4 + t^6" in out


def test_solve_as_obstructions(capsys):
    code, out, _ = run_cli(capsys, "solve-as", "--field", "3", "t^-1")
    assert code == 0 and "Unsolvable" in out and "-1" in out
    code, out, _ = run_cli(capsys, "solve-as", "--field", "3", "1")
    assert code == 0 and "nonzero trace" in out


def test_demo_counterexample_exit_zero(capsys):
    code, out, _ = run_cli(capsys, "demo-counterexample")
    assert code == 0
    assert "reproduced" in out


def test_demo_counterexample_json_transcript(capsys):
    code, out, _ = run_cli(capsys, "demo-counterexample", "--json")
    assert code == 0
    body = json.loads(out)
    assert body["ok"] is True
    assert body["facts"]["oracle_1_divides_2"] is False
    assert body["facts"]["naive_multiplier_mismatch_at_2_1"] is True
    assert body["facts"]["chosen"]["N"] == 2
    assert body["facts"]["rescan_clean"] is True


def test_demo_failure_path_flips_exit_code():
    # forcing the naive multiplier back into the rescan must sink the demo
    resp = ops.demo_counterexample(DemoRequest(bound=4), rescan_N=1)
    assert resp.ok is False
    assert resp.facts.rescan_clean is False


def test_demo_failure_maps_to_exit_three(capsys, monkeypatch):
    import ascoder.cli as cli_mod
    real = ops.demo_counterexample
    monkeypatch.setattr(cli_mod.ops, "demo_counterexample",
                        lambda req: real(req, rescan_N=1))
    code, out, _ = run_cli(capsys, "demo-counterexample", "--bound", "4")
    assert code == 3
    assert "FAILED to reproduce" in out


def test_outputs_are_deterministic(capsys):
    first = run_cli(capsys, "scan", "--field", "3", "--alpha-inv", ALPHA_INV,
                    "--N", "1", "--bound", "4", "--json")
    second = run_cli(capsys, "scan", "--field", "3", "--alpha-inv", ALPHA_INV,
                     "--N", "1", "--bound", "4", "--json")
    assert first == second
    d1 = run_cli(capsys, "demo-counterexample", "--json")
    d2 = run_cli(capsys, "demo-counterexample", "--json")
    assert d1 == d2


def test_text_and_json_verdicts_agree(capsys):
    _, text_out, _ = run_cli(capsys, "check", "--field", "3",
                             "--alpha-inv", ALPHA_INV, "--m", "2", "--n", "1")
    _, json_out, _ = run_cli(capsys, "check", "--field", "3", "--json",
                             "--alpha-inv", ALPHA_INV, "--m", "2", "--n", "1")
    assert text_out.strip() == str(json.loads(json_out)["holds"]).lower()


def test_parse_error_exits_one(capsys):
    code, _, err = run_cli(capsys, "eval", "--field", "3", "t +")
    assert code == 1 and "error:" in err
    code, _, err = run_cli(capsys, "eval", "--field", "bogus", "t")
    assert code == 1
    code, _, err = run_cli(capsys, "choose-n", "--field", "3", "--alpha", "t^-1")
    assert code == 1


def test_pinned_precision_shortfall_exits_two(capsys):
    code, _, err = run_cli(capsys, "solve-as", "--field", "3", "--prec", "10",
                           "t^-3 + O(t^5)")
    assert code == 2 and "error:" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ascoder", "vhat", "--field", "3", ALPHA_INV],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "Finite(1)"


def test_requires_subcommand():
    with pytest.raises(SystemExit):
        main([])
