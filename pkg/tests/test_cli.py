"""CLI: subcommand behavior, exit codes, output determinism."""

import json
import subprocess
import sys

from gpbound.cli import main


def run_cli(*argv):
    import contextlib
    import io

    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def test_gp():
    code, out, _ = run_cli("gp", "7")
    assert code == 0
    assert out.strip() == "3"
    code, out, _ = run_cli("gp", "191")
    assert out.strip() == "19"


def test_bound_thm1_threshold():
    code, out, _ = run_cli("bound", "thm1", "--p", "1e56", "--r", "2", "--omega", "10")
    assert code == 0
    blob = json.loads(out)
    assert blob["exponent"] == "3/8"
    assert blob["value"]["lo"].startswith("4.194304")


def test_bound_burgess_comparison():
    code, out, _ = run_cli(
        "bound", "burgess", "--p", "1e56", "--r", "2", "--omega", "10"
    )
    assert code == 0
    blob = json.loads(out)
    assert blob["new_strictly_smaller"] is True


def test_bound_sieved_requires_flags():
    code, _, err = run_cli("bound", "sieved", "--p", "1e56", "--r", "2", "--omega", "5")
    assert code == 2
    assert "needs --s and --delta" in err


def test_certify_exact():
    code, out, _ = run_cli(
        "certify", "--p", "1000000007", "--r", "2", "--h", "360", "--H", "150000"
    )
    assert code == 0
    blob = json.loads(out)
    assert blob["verdict"] == "certified"
    code, _, _ = run_cli(
        "certify", "--p", "1000000007", "--r", "2", "--h", "360", "--H", "5000"
    )
    assert code == 1


def test_verify_stirling():
    code, out, _ = run_cli("verify", "stirling", "--rmax", "100")
    assert code == 0
    assert json.loads(out)["pass"] is True


def test_verify_charsum_small():
    code, out, _ = run_cli("verify", "charsum", "--pmax", "60", "--hmax", "4", "--rmax", "2")
    assert code == 0
    blob = json.loads(out)
    assert blob["violations"] == 0
    assert blob["worst"]["slack"] > 0
    assert {"p", "j", "order", "h", "r", "exact", "bound", "slack"} <= set(blob["worst"])


def test_verify_sieve_small():
    code, out, _ = run_cli("verify", "sieve", "--pmax", "100")
    assert code == 0
    blob = json.loads(out)
    assert blob["primes_checked"] == 24  # odd primes 3..97 inclusive of 2? counted below
    assert blob["worst_slack"] <= 1e-6


def test_verify_intervals_small():
    code, out, _ = run_cli("verify", "intervals", "--xmax", "2000", "--grid", "30")
    assert code == 0
    blob = json.loads(out)
    assert blob["pass"] is True
    claims = [r["claim"] for r in blob["reports"]]
    assert any("S - 3X^2" in c or "S -" in c for c in claims)


def test_verify_cases_exit_codes():
    code, out, _ = run_cli("verify", "cases", "--target", "cor2")
    blob = json.loads(out)
    assert code == (0 if blob["overall_pass"] else 1)
    # the known verdicts (defects of the stated case analysis)
    assert code == 1
    assert any("omega=17" in f for f in blob["failures"])


def test_verify_cases_tsv():
    code, out, _ = run_cli("--format", "tsv", "verify", "cases", "--target", "cor2")
    lines = out.strip().splitlines()
    assert lines[0].startswith("omega\ts\t")
    assert len(lines) == 200  # header + 199 rows


def test_verify_winchain_subrange():
    code, out, _ = run_cli("verify", "win-chain", "--rmin", "2", "--rmax", "6")
    assert code == 0
    assert json.loads(out)["all_certified"] is True


def test_optimize():
    code, out, _ = run_cli("optimize", "--p", "1000000007")
    assert code == 0
    blob = json.loads(out)
    assert blob["feasible"] is True
    code, _, _ = run_cli("optimize", "--p", "106696591")
    assert code == 1


def test_optimize_threshold():
    code, out, _ = run_cli("optimize", "--p", "1e56", "--omega", "20")
    assert code == 0
    blob = json.loads(out)
    assert blob["feasible"] is True
    assert blob["exponent"] == "5/16"


def test_scan_safe_primes():
    code, out, _ = run_cli(
        "scan", "--from", "100000000", "--to", "101000000", "--shape", "safe-prime",
        "--limit", "5",
    )
    assert code == 0
    blob = json.loads(out)
    assert blob["primes_checked"] == 5
    assert blob["contradictions"] == []


def test_scan_random_shape_seeded():
    argv = (
        "scan", "--from", "100000000", "--to", "200000000", "--shape", "random",
        "--limit", "4",
    )
    a = run_cli(*argv)
    b = run_cli(*argv)
    assert a == b
    code, out, _ = a
    assert code == 0
    assert json.loads(out)["primes_checked"] == 4


def test_deterministic_output():
    argv = ("verify", "charsum", "--pmax", "40", "--hmax", "3", "--rmax", "2")
    a = run_cli(*argv)
    b = run_cli(*argv)
    assert a == b


def test_usage_error_exit_2():
    code, _, _ = run_cli("bogus")
    assert code == 2


def test_console_script_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "gpbound.cli", "gp", "13"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "2"
