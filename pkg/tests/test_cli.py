import json
import subprocess
import sys

import pytest

from cong17 import data
from cong17.cli import SCHEMA, dataset_checks, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, err = run(capsys, *argv)
    rep = json.loads(out)
    assert rep["schema"] == SCHEMA
    return code, rep


def test_dataset_checks():
    checks = dataset_checks()
    assert checks and all(c["ok"] for c in checks)
    assert sum(c["check"].startswith("table 1 exact row") for c in checks) == 7


def test_ec_named(capsys):
    code, rep = report(capsys, "ec", "--name", "E2p")
    assert code == 0 and rep["ok"] and rep["command"] == "ec"
    res = rep["results"]
    assert res["conductor"] == 47775
    assert res["discriminant_factorization"] == {"sign": -1, "factors": {"3": 2, "5": 2, "7": 2, "13": 17}}
    assert res["traces"]["29"] == 9


def test_ec_curve_argument(capsys):
    code, rep = report(capsys, "ec", "--curve", "[0,0,0,0,1]", "--bound", "20")
    assert code == 0 and rep["results"]["discriminant"] == "-432"
    assert rep["results"]["conductor"] == 36


def test_ec_singular_curve_fails(capsys):
    code, rep = report(capsys, "ec", "--curve", "[0,0,0,0,0]")
    assert code == 1 and not rep["ok"] and "singular" in rep["error"]


def test_congruence_full(capsys):
    code, rep = report(capsys, "congruence", "--pair", "prime17-antisymplectic", "--cap", "15680", "--threads", "1")
    assert code == 0 and rep["results"]["status"] == "full-verified"
    assert rep["results"]["warnings"] == []


def test_congruence_cap_below_bound_warns(capsys):
    code, rep = report(capsys, "congruence", "--pair", "prime17-symplectic", "--cap", "15680", "--threads", "1")
    assert code == 0 and rep["results"]["status"] == "verified-to-bound"
    assert any("below the Sturm bound" in w for w in rep["results"]["warnings"])


def test_congruence_cap_above_bound_clamps(capsys):
    code, rep = report(capsys, "congruence", "--pair", "prime17-antisymplectic", "--cap", "99999", "--threads", "1")
    assert code == 0 and rep["results"]["clamped"] and rep["results"]["cap"] == 15680


def test_congruence_failure_exit_code(capsys):
    E1 = "[" + ",".join(map(str, data.CURVES["E1"])) + "]"
    code, rep = report(capsys, "congruence", "--curves", E1, "[1,-1,0,-128973503459,17827877649739966]", "--cap", "200")
    assert code == 1 and rep["results"]["status"] == "failed"


def test_symplectic(capsys):
    code, rep = report(capsys, "symplectic", "--pair", "prime17-antisymplectic")
    assert code == 0 and rep["results"]["verdict"] == "anti-symplectic" and rep["results"]["residue"] == 11
    code, rep = report(capsys, "symplectic", "--pair", "prime17-symplectic")
    assert rep["results"]["verdict"] == "symplectic" and rep["results"]["residue"] == 16


def test_genus2(capsys):
    code, rep = report(capsys, "genus2", "verify", "--bound", "60")
    assert code == 0
    assert rep["results"]["morphisms_mod_101"] == {"phi_1": True, "phi_2": True, "corrupted h_1 rejected": True}


def test_surface_eval(capsys):
    code, rep = report(capsys, "surface", "eval", "--k", "1", "--T", "1/3", "--x=-2/75", "--y=-11/125")
    assert code == 0 and rep["results"]["on_surface"] and rep["results"]["square"]
    code, rep = report(capsys, "surface", "eval", "--k", "1", "--T", "1/3", "--x=-2/75", "--y=1")
    assert code == 1 and not rep["results"]["on_surface"]


def test_surface_tables(capsys):
    code, rep = report(capsys, "surface", "table2")
    assert code == 0 and len(rep["results"]) == 7
    code, rep = report(capsys, "surface", "table1", "--k", "3")
    assert code == 0 and {r["k"] for r in rep["results"]} == {3}


def test_surface_search_json_lines(capsys):
    code, out, _ = run(capsys, "surface", "search", "--k", "1", "--bt", "3", "--bx", "10", "--threads", "1")
    lines = [json.loads(line) for line in out.splitlines()]
    summary, points = lines[-1], lines[:-1]
    assert code == 0 and summary["ok"] and summary["new"] == 0 and summary["points"] == len(points)
    assert points and all(p["class"] != "NEW" for p in points)
    assert set(points[0]) == {"k", "T", "x", "y", "z", "class"}


def test_search_output_stable_across_threads(capsys):
    _, one, _ = run(capsys, "surface", "search", "--k", "3", "--bt", "4", "--bx", "8", "--threads", "1")
    _, two, _ = run(capsys, "surface", "search", "--k", "3", "--bt", "4", "--bx", "8", "--threads", "2")
    assert one == two


def test_invariants_mod_p(capsys):
    code, rep = report(capsys, "invariants", "verify", "--mod", "103", "--trials", "2")
    assert code == 0 and len(rep["results"]) == 8


def test_invariants_exact(capsys):
    code, rep = report(capsys, "invariants", "verify", "--generator", "m17", "--bi")
    assert code == 0 and all(r["ok"] for r in rep["results"])


def test_bimap(capsys):
    code, rep = report(capsys, "bimap", "verify", "--case", "3", "--trials", "5", "--seed", "4")
    assert code == 0 and rep["results"]["nonempty"] == 5 and rep["parameters"]["seed"] == 4


def test_reports_byte_stable(capsys):
    a = run(capsys, "bimap", "verify", "--case", "1", "--trials", "4", "--seed", "9")[1]
    b = run(capsys, "bimap", "verify", "--case", "1", "--trials", "4", "--seed", "9")[1]
    assert a == b
    c = run(capsys, "bimap", "verify", "--case", "1", "--trials", "4", "--seed", "10")[1]
    assert a != c


def test_timing_flag(capsys):
    _, rep = report(capsys, "--timing", "symplectic", "--pair", "prime17-symplectic")
    assert "seconds" in rep
    _, rep = report(capsys, "symplectic", "--pair", "prime17-symplectic")
    assert "seconds" not in rep


def test_suite_quick(capsys):
    code, rep = report(capsys, "suite", "--quick", "--threads", "1")
    assert code == 0 and rep["ok"]
    names = [r["check"] for r in rep["results"]]
    assert any("symplectic" in n for n in names) and "table 2" in names and "table 1 exact rows" in names


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["nonsense"],
        ["ec"],
        ["ec", "--name", "E1", "--bogus"],
        ["congruence"],
        ["surface", "eval", "--k", "1"],
        ["surface", "search"],
        ["invariants", "verify", "--mod", "101"],
        ["bimap", "verify", "--case", "2"],
    ],
)
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2
    capsys.readouterr()


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cong17.cli", "symplectic", "--pair", "prime17-antisymplectic"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["witness"] == 3
    assert "symplectic: ok" in proc.stderr
