import json
import subprocess
import sys

import pytest

from gaudin_potentials.cli import main
from gaudin_potentials.potentials import build_Q
from gaudin_potentials.symbolic import expr_equal, loads_expr


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def test_tables_output(capsys):
    code, out = run_cli(["tables", "--n", "4", "--k", "2"], capsys)
    assert code == 0
    assert "a[0] = 1/3" in out
    assert "a[1] = -1/6" in out
    assert "a[2] = 1/3" in out
    assert "b[0] = 1/6" in out
    assert "b[1] = -1/3" in out


def test_tables_k1(capsys):
    code, out = run_cli(["tables", "--n", "5", "--k", "1"], capsys)
    assert code == 0
    assert "a[0] = -1/5" in out
    assert "a[1] = 4/5" in out
    assert "b[0] = -1/5" in out


def test_pair_values(capsys):
    code, out = run_cli(["pair", "--n", "2", "--k", "1", "--I", "1", "--J", "1"], capsys)
    assert code == 0 and out == "1/2\n"
    code, out = run_cli(["pair", "--n", "2", "--k", "1", "--I", "1", "--J", "1", "--m", "1"], capsys)
    assert code == 0 and out == "-1/(u_1-u_2)\n"
    code, out = run_cli(["pair", "--n", "4", "--k", "2", "--I", "1,2", "--J", "3,4"], capsys)
    assert code == 0 and out == "1/3\n"


def test_pair_malformed_subset_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["pair", "--n", "4", "--k", "2", "--I", "1,zap", "--J", "3,4"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["pair", "--n", "4", "--k", "2", "--I", "1", "--J", "3,4"])
    assert exc.value.code == 2


def test_potential_P_golden_bytes(tmp_path, capsys):
    out_file = tmp_path / "p.txt"
    code, _ = run_cli(
        ["potential", "--n", "2", "--k", "1", "--kind", "P", "--out", str(out_file)], capsys
    )
    assert code == 0
    assert out_file.read_text(encoding="utf-8") == (
        "POLY\n1/4 ; (1,1)^2\n-1/2 ; (1,1)^1 (2,1)^1\n1/4 ; (2,1)^2\n"
    )


def test_potential_Q_roundtrip(tmp_path, capsys):
    out_file = tmp_path / "q.txt"
    code, _ = run_cli(
        ["potential", "--n", "4", "--k", "2", "--kind", "Q", "--out", str(out_file)], capsys
    )
    assert code == 0
    text = out_file.read_text(encoding="utf-8")
    assert text.startswith("LOG 1 2\n")
    parsed = loads_expr(text)
    assert parsed == build_Q(4, 2)
    assert expr_equal(parsed, build_Q(4, 2))
    # deterministic bytes on re-export
    out2 = tmp_path / "q2.txt"
    run_cli(["potential", "--n", "4", "--k", "2", "--kind", "Q", "--out", str(out2)], capsys)
    assert out2.read_bytes() == out_file.read_bytes()


def test_verify_json_all_pass(capsys):
    code, out = run_cli(["verify", "--n", "4", "--k", "2", "--format", "json"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["n"] == 4 and report["k"] == 2
    names = [c["name"] for c in report["checks"]]
    assert set(names) == {
        "relations",
        "locality",
        "shapovalov-oracle",
        "corollary",
        "hamiltonian-properties",
        "theorem1",
        "relation",
        "theorem2",
    }
    assert all(c["status"] == "pass" for c in report["checks"])
    assert all(c["first_failure"] is None for c in report["checks"])


def test_verify_single_check_counts(capsys):
    code, out = run_cli(
        ["verify", "--n", "6", "--k", "2", "--check", "theorem2", "--format", "json"], capsys
    )
    assert code == 0
    report = json.loads(out)
    (chk,) = report["checks"]
    assert chk["name"] == "theorem2"
    assert chk["cases_checked"] == 15 * 15 * 6


def test_verify_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--n", "3", "--k", "2"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--n", "4", "--k", "2", "--check", "bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--n", "80", "--k", "1"])
    assert exc.value.code == 2


def _strip_timings(report):
    for chk in report["checks"]:
        chk.pop("elapsed_s", None)
    return report


def test_verify_deterministic_reports(tmp_path, capsys):
    args = ["verify", "--n", "4", "--k", "2", "--format", "json", "--seed", "11"]
    f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(args + ["--out", str(f1)]) == 0
    assert main(args + ["--out", str(f2)]) == 0
    capsys.readouterr()
    r1 = json.loads(f1.read_text())
    r2 = json.loads(f2.read_text())
    assert _strip_timings(r1) == _strip_timings(r2)


def test_verify_text_format(capsys):
    code, out = run_cli(["verify", "--n", "4", "--k", "1", "--check", "theorem1"], capsys)
    assert code == 0
    assert "[PASS] theorem1" in out


def test_module_entry_point_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "gaudin_potentials", "pair", "--n", "2", "--k", "1", "--I", "1", "--J", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "-1/2\n"
