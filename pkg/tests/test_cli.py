"""Command line interface: exit codes, JSON determinism, CSV shapes."""

import contextlib
import io
import json
import shutil
import subprocess
import sys

import pytest

from omegaw import __version__, lambert_w
from omegaw.cli import run
from oracles import GERADE_Q1_R1, W0_AT_1, close


def run_cli(args):
    """Drive the CLI in-process; return (exit code, stdout, stderr)."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = run(args)
    return code, out.getvalue(), err.getvalue()


# every example command the README documents, verbatim
DOCUMENTED = [
    "lambertw --z 1 --branch 0 --json",
    "identity-check --which product --points=1+2j@0,-1+0j@-1 --json",
    "identity-check --which tetration --alpha 1.4142135623730951 --json",
    "solve --sign -1 --k 2 --P 1,-2,1 --Q 1 --lo -1 --hi 3 --json",
    "separate --a 1 --b 0.5 --r1 1 --r2 2 --R 1 --json",
    "separate --a 1 --b 0.5 --r1 1 --r2 2 --R 1 --branch1 0 --branch2 0 --json",
    "demkov --R 1",
    "quantum --q 1 --lambda 1 --R 1 --json",
    "quantum --q 1 --lambda 2 --R 1 --json",
    "quantum --q 1 --lambda 2 --R-grid 0.1:5:0.1 --csv",
    "gravity2map --x -2 --a 0 --json",
    "gravity3 --m 0.25,0.25,0.5 --q 0 --K 2.309 --R 1 --json",
    "gravity3 --m 0.33,0.33,0.34 --q-grid 0.1:0.5:0.1 --K 2 --R 1 --csv",
]


def test_documented_commands_exit_zero():
    for cmd in DOCUMENTED:
        code, out, err = run_cli(cmd.split())
        assert code == 0, f"{cmd!r} exited {code}: {err}"
        assert out, f"{cmd!r} printed nothing"
        assert err == "", f"{cmd!r} wrote to stderr: {err}"


def test_documented_commands_are_byte_deterministic():
    for cmd in DOCUMENTED:
        _, first, _ = run_cli(cmd.split())
        _, second, _ = run_cli(cmd.split())
        assert first == second, f"{cmd!r} output differs between runs"


def test_json_record_shape():
    code, out, _ = run_cli(["lambertw", "--z", "1", "--branch", "0", "--json"])
    assert code == 0
    record = json.loads(out)
    assert set(record) == {"command", "inputs", "results", "version"}
    assert record["command"] == "lambertw"
    assert record["version"] == __version__
    assert record["inputs"] == {"branch": 0, "z": 1.0}
    (res,) = record["results"]
    assert close(res["value"], W0_AT_1, 1e-15)
    assert res["residual"] <= 1e-15
    # keys are emitted sorted at every nesting level
    assert out == out.strip() + "\n"
    assert list(record) == sorted(record)
    assert list(res) == sorted(res)


def test_json_complex_values_round_trip():
    # a leading dash needs the = form, else argparse reads it as a flag
    code, out, _ = run_cli(["lambertw", "--z=-1+0j", "--branch", "-1",
                            "--json"])
    assert code == 0
    (res,) = json.loads(out)["results"]
    w = complex(res["value"]["real"], res["value"]["imag"])
    assert close(w, lambert_w(complex(-1.0, 0.0), -1), 1e-14)


def test_domain_errors_exit_2():
    for cmd in ("lambertw --z -1 --branch 0",
                "demkov --R 0",
                "gravity2map --x -2 --a 2",
                "quantum --q -1 --lambda 1 --R 1"):
        code, out, err = run_cli(cmd.split())
        assert code == 2, f"{cmd!r} exited {code}"
        assert out == ""
        assert "error" in err


def test_no_solution_exits_3():
    # the rational form with b_o = -1 has quotient -(x-1)/(x-1) = -1 < 0
    code, out, err = run_cli(
        "separate --r1 1 --r2 1 --a 1 --b -1 --R 1 --rational".split())
    assert code == 3
    assert out == ""
    assert "no solution" in err


def test_unreachable_tolerance_exits_3():
    code, _, err = run_cli(
        "quantum --q 1 --lambda 2 --R 1 --tol 1e-30".split())
    assert code == 3
    assert "--tol" in err


def test_usage_errors_exit_64():
    for cmd in ("separate --a 1 --b 0.5 --r1 1 --r2 2 --R 1 --branch1 0",
                "quantum --q 1 --lambda 2 --R-grid 0.1:5 --csv",
                "quantum --q 1 --lambda 2",
                "gravity3 --m 0.25,0.5 --q 0 --K 2 --R 1",
                "gravity3 --m 0.25,0.25,0.5 --K 2 --R 1",
                "identity-check --which addition",
                "quantum --q 1 --lambda 1 --R 1 --tol -1"):
        code, out, err = run_cli(cmd.split())
        assert code == 64, f"{cmd!r} exited {code}"
        assert out == ""
        assert err
    code, _, err = run_cli([])
    assert code == 64 and "usage" in err


def test_help_exits_zero():
    code, out, _ = run_cli(["--help"])
    assert code == 0 and "usage" in out
    for sub in ("lambertw", "identity-check", "solve", "separate", "demkov",
                "special1", "special2", "quantum", "gravity2map", "gravity3"):
        code, out, _ = run_cli([sub, "--help"])
        assert code == 0, f"{sub} --help exited {code}"
        assert sub in out


def test_csv_headers():
    for cmd, header in (
            ("quantum --q 1 --lambda 2 --R-grid 0.5:2:0.5 --csv", "R,d,E"),
            ("demkov --R-grid 0.5:2:0.5 --csv", "R,lambda,x"),
            ("gravity3 --m 0.33,0.33,0.34 --q-grid 0.1:0.3:0.1 --K 2 --R 1 --csv",
             "q,V,residual")):
        code, out, _ = run_cli(cmd.split())
        assert code == 0, f"{cmd!r} exited {code}"
        lines = out.splitlines()
        assert lines[0] == header
        assert len(lines) > 1
        for line in lines[1:]:
            assert len(line.split(",")) == len(header.split(","))


def test_identity_check_product_matches_direct():
    code, out, _ = run_cli(
        ["identity-check", "--which", "product",
         "--points=1+2j@0,-1+0j@-1", "--json"])
    assert code == 0
    (res,) = json.loads(out)["results"]
    direct = lambert_w(1 + 2j, 0) * lambert_w(complex(-1.0, 0.0), -1)
    via = complex(res["value"]["real"], res["value"]["imag"])
    assert close(via, direct, 1e-12)
    assert res["residual"] <= 1e-12 * max(1.0, abs(direct))


def test_identity_check_addition():
    code, out, _ = run_cli(
        ["identity-check", "--which", "addition", "--a", "0.5", "--b", "2.5",
         "--json"])
    assert code == 0
    (res,) = json.loads(out)["results"]
    assert res["residual"] <= 1e-12


def test_solve_reports_both_roots():
    code, out, _ = run_cli(
        "solve --sign -1 --k 2 --P 1,-2,1 --Q 1 --lo -1 --hi 3 --json".split())
    assert code == 0
    values = sorted(r["value"] for r in json.loads(out)["results"])
    assert len(values) == 2
    # exp(-2x) = (x-1)^2 on (-1, 3): x = 0 exactly and x = 1 + W(1/e)
    assert values[0] == 0.0
    assert close(values[1], GERADE_Q1_R1, 1e-12)


def test_human_readable_output_lists_values():
    code, out, _ = run_cli("demkov --R 1".split())
    assert code == 0
    assert out.startswith("demkov\n")
    assert "value=" in out and "residual=" in out


def test_console_script_entry_point():
    exe = shutil.which("omegaw")
    argv = [exe] if exe else [sys.executable, "-m", "omegaw.cli"]
    proc = subprocess.run(argv + ["lambertw", "--z", "1", "--branch", "0",
                                  "--json"],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0, proc.stderr
    _, inproc, _ = run_cli(["lambertw", "--z", "1", "--branch", "0", "--json"])
    assert proc.stdout == inproc
