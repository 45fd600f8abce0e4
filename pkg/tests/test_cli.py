import csv
import io
import json
import subprocess
import sys

import pytest

from pseudofactor.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_and_verify_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "solve", "--gen", "g2:k=2,l=4")
    assert code == 0
    report = json.loads(out)
    assert set(report) == {"components", "non_cycle_count", "mode", "bound", "witness", "satisfied"}
    assert report["bound"] == 2 and report["satisfied"] and report["non_cycle_count"] <= 2
    path = tmp_path / "r.json"
    path.write_text(out)
    code, out, _ = run(capsys, "verify", "--gen", "g2:k=2,l=4", "--factor", str(path))
    assert code == 0 and json.loads(out)["valid"] and json.loads(out)["certificate_ok"]


def test_verify_rejects_tampered_factor(capsys, tmp_path):
    _, out, _ = run(capsys, "solve", "--gen", "cycle:6")
    report = json.loads(out)
    report["components"] = report["components"][:-1] or [{"kind": "vertex", "vertices": [0]}]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(report))
    code, out, _ = run(capsys, "verify", "--gen", "cycle:6", "--factor", str(path))
    assert code == 1 and json.loads(out)["violations"]


def test_verify_rejects_wrong_witness(capsys, tmp_path):
    _, out, _ = run(capsys, "solve", "--gen", "path:5")
    report = json.loads(out)
    report["bound"] += 1
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(report))
    code, out, _ = run(capsys, "verify", "--gen", "path:5", "--factor", str(path))
    assert code == 1 and json.loads(out)["certificate_ok"] is False


def test_solve_from_file_and_out(capsys, tmp_path):
    src = tmp_path / "g.txt"
    src.write_text("# triangle plus pendant\n4 4\n0 1\n1 2\n2 0\n2 3\n")
    dest = tmp_path / "out.json"
    code, out, _ = run(capsys, "solve", "--input", str(src), "--out", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["non_cycle_count"] == 1


def test_trace_goes_to_stderr(capsys):
    code, out, err = run(capsys, "solve", "--gen", "random:n=14,p=1/4,seed=3", "--trace")
    assert code == 0
    json.loads(out)
    for line in err.splitlines():
        assert "event" in json.loads(line)


def test_f_subcommand(capsys):
    code, out, _ = run(capsys, "f", "--gen", "g2:k=3,l=6")
    data = json.loads(out)
    assert code == 0 and data["f"] == 2 and data["classical_bound"] == 4
    assert set(data) == {"f", "alpha", "delta", "classical_bound", "witness"}


def test_oracle_subcommand(capsys):
    code, out, _ = run(capsys, "oracle", "--gen", "fig3", "--gen", "cycle:5")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 2
    assert rows[0]["max_two_regular"] == 19 and rows[0]["oracle_min"] == 2
    assert rows[1] == {"instance": "cycle:5", "n": 5, "solver": 0, "oracle_min": 0, "f": 1,
                       "classical_bound": 1, "max_two_regular": 5}


def test_gen_round_trips_through_solve(capsys, tmp_path):
    dest = tmp_path / "g.txt"
    assert run(capsys, "gen", "forest:n=10", "--seed", "5", "--out", str(dest))[0] == 0
    assert dest.read_text().startswith("# generated by: forest:n=10,seed=5")
    code, out, _ = run(capsys, "solve", "--input", str(dest))
    assert code == 0


def test_sweep_csv(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "g2", "--from", "2", "--to", "4")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["params"] for r in rows] == ["k=2,l=4", "k=3,l=6", "k=4,l=8"]
    assert [r["f"] for r in rows] == ["2"] * 3
    assert [r["classical_bound"] for r in rows] == ["3", "4", "5"]
    # n = 18 exceeds the default oracle budget of 16, so the column is left blank
    assert rows[-1]["oracle_count"] == ""


@pytest.mark.parametrize("argv", [
    ["solve"],
    ["solve", "--gen", "bogus:1"],
    ["solve", "--gen", "cycle:5", "--input", "x.txt"],
    ["solve", "--input", "/nonexistent/graph.txt"],
    ["gen", "g2:k=3,l=5"],
    ["sweep", "--family", "g1", "--from", "1", "--to", "2", "--h", "Q9"],
])
def test_input_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "input error" in err


def test_malformed_edge_list_exit_2(capsys, tmp_path):
    src = tmp_path / "g.txt"
    src.write_text("3 1\n0 0\n")
    assert run(capsys, "solve", "--input", str(src))[0] == 2


def test_budget_exit_3(capsys):
    argv = ["solve", "--gen", "random:n=30,p=1/5,seed=1", "--budget-n", "20", "--no-fallback"]
    code, _, err = run(capsys, *argv)
    assert code == 3 and "budget" in err
    code, out, _ = run(capsys, *argv[:-1])
    assert code == 0 and json.loads(out)["mode"] == "certificate"


def test_output_is_deterministic(capsys):
    argv = ["solve", "--gen", "random:n=20,p=1/3", "--seed", "11"]
    first = run(capsys, *argv)
    assert run(capsys, *argv) == first


def test_console_script_runs_in_subprocess():
    argv = [sys.executable, "-m", "pseudofactor.cli", "gen", "cycle:4"]
    a = subprocess.run(argv, capture_output=True, check=True)
    b = subprocess.run(argv, capture_output=True, check=True)
    assert a.stdout == b.stdout and b"4 4" in a.stdout
