import json
import subprocess
import sys

import pytest

from balanced_simplices.cli import run
from balanced_simplices.pgm import read_pgm

from fixtures import reference_grid


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_table_csv(capsys):
    code, out, _ = call(capsys, "arith", "--mod", "12", "--a", "0", "--d", "1,5", "--size", "12")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "residue,count"
    assert [int(x.split(",")[1]) for x in lines[1:]] == [5, 6, 7, 8] * 3


def test_arith_json_analytic(capsys):
    code, out, _ = call(capsys, "arith", "--mod", "12", "--d", "1,5", "--size", "12",
                        "--analytic", "period2", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and rep["relabeled"] == [11, 4, 11] and not rep["balanced"]
    code, out, _ = call(capsys, "arith", "--mod", "5", "--d", "0,1", "--size", "7",
                        "--analytic", "degenerate", "--format", "json")
    assert json.loads(out)["chain"] == [9, 7, 5, 4, 3]


def test_simplex_report(capsys):
    code, out, _ = call(capsys, "simplex", "--mod", "5", "--weights", "2,1,1", "--seed", "ap:0,1",
                        "--apex", "2,2", "--orient", "++", "--size", "5")
    rep = json.loads(out)
    assert code == 0
    assert rep["counts"] == {"0": 2, "1": 2, "2": 4, "3": 5, "4": 2}
    assert rep["balanced"] is False and rep["total"] == 15
    assert rep["config"]["weights"] == "2,1,1"


def test_check_exit_codes(capsys):
    code, out, _ = call(capsys, "check", "thm2", "--mod", "5", "--n", "3", "--exhaustive")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and rep["config"]["rng_seed"] is not None
    code, _, err = call(capsys, "check", "nope")
    assert code == 2 and "usage" in err
    code, _, _ = call(capsys, "check", "thm5", "--mod", "10", "--d", "2,1,3")
    assert code == 0
    code, _, _ = call(capsys, "check", "sigma", "--mod", "5")
    assert code == 2  # sigma is a unit: precondition is a usage error


def test_check_reports_verified_failure(capsys, monkeypatch):
    from balanced_simplices import verify

    def always_fails(*args, **kw):
        v = verify.Verdict(verify.TheoremId.TETRA_MOD3)
        v.record({"m": 3}, False, "forced")
        return v

    monkeypatch.setattr(verify, "verify_tetra_mod3", always_fails)
    code, out, _ = call(capsys, "check", "tetra-mod3", "--mod", "3")
    assert code == 1 and json.loads(out)["failure_count"] == 1


def test_usage_errors(capsys):
    assert call(capsys)[0] == 2
    assert call(capsys, "simplex", "--mod", "5")[0] == 2
    assert call(capsys, "orbit", "--mod", "5", "--seed", "bogus")[0] == 2
    assert call(capsys, "--help")[0] == 0


def test_orbit_text_matches_reference_rows(capsys):
    code, out, _ = call(capsys, "orbit", "--mod", "5", "--weights", "2,1,1", "--seed", "ap:0,1",
                        "--lo", "2", "--width", "14", "--t-hi", "6", "--format", "text")
    rows = [[int(x) for x in line.split()] for line in out.strip().splitlines()]
    assert code == 0 and rows == reference_grid()[:7].tolist()


def test_orbit_json_replays(capsys):
    argv = ["orbit", "--mod", "7", "--weights", "pascal:1", "--seed", "delta", "--t-hi", "4",
            "--lo", "-2", "--width", "8", "--method", "cone"]
    _, first, _ = call(capsys, *argv)
    _, second, _ = call(capsys, *argv)
    assert first == second
    rep = json.loads(first)
    assert rep["values"][4][2 + 2] == 6


def test_render_writes_pgm(capsys, tmp_path):
    out = tmp_path / "fig.pgm"
    code, _, _ = call(capsys, "render", "--mod", "5", "--weights", "2,1,1", "--seed", "ap:0,1",
                      "--width", "14", "--height", "7", "--x0", "2", "--out", str(out))
    assert code == 0
    assert (read_pgm(out) == reference_grid()[:7] * 63).all()
    code, _, _ = call(capsys, "render", "--mod", "2", "--weights", "pascal:1", "--seed", "delta",
                      "--width", "128", "--height", "64", "--out", str(out))
    img = read_pgm(out)
    assert code == 0 and img.shape == (64, 128) and img[0, 0] == 255 and img[0, 1] == 0


def test_bench(capsys):
    code, out, _ = call(capsys, "bench", "--mod", "5", "--weights", "pascal:1", "--sizes", "1,60")
    rows = json.loads(out)["rows"]
    assert code == 0 and all(r["equal"] for r in rows)
    code, out, _ = call(capsys, "bench", "--mod", "4", "--weights", "2,1,1", "--sizes", "5")
    row = json.loads(out)["rows"][0]
    assert code == 0 and row["equal"] is None and "cone only" in row["note"]


def test_decompose(capsys):
    code, out, _ = call(capsys, "decompose", "--mod", "5", "--weights", "pascal:1", "--seed",
                        "ap:0,1", "--apex", "0,0", "--orient", "++", "--size", "8", "--alpha", "4")
    rep = json.loads(out)
    assert code == 0 and rep["verified"] and rep["total"] == rep["expected_total"] == 36
    assert len(rep["parts"]) == 16


def test_search(capsys, tmp_path):
    code, out, _ = call(capsys, "search", "steinhaus", "--mod", "5", "--size", "4")
    rep = json.loads(out)
    assert code == 0 and rep["count"] == 4 and len(rep["rows"]) == 4
    ck = tmp_path / "ck"
    code, out, _ = call(capsys, "search", "steinhaus", "--mod", "3", "--size", "6", "--shards", "3",
                        "--symmetry", "on", "--count-only", "--checkpoint", str(ck))
    assert json.loads(out)["count"] == 52 and len(ck.read_text().splitlines()) == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "balanced_simplices", "arith", "--mod", "3",
                           "--d", "1,2", "--size", "3"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("residue,count")
