import json
import subprocess
import sys

import pytest

from bundle_mdpc.cli import main
from test_binmat import WORKED_EXAMPLE_H


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_writes_worked_example(tmp_path, capsys):
    code, out, err = run(capsys, "construct", "--q", "3", "--t", "1", "--multipliers", "2", "--out", str(tmp_path))
    assert code == 0
    assert err.startswith("# config ")
    assert out.strip() == "n=26 k=14 v=4 w=8 sH=2"
    assert (tmp_path / "H.txt").read_text() == "13 26\n" + WORKED_EXAMPLE_H
    meta = json.loads((tmp_path / "code.json").read_text())
    assert meta == {"q": 3, "t": 1, "multipliers": [2], "n": 26, "k": 14, "sH": 2}
    assert (tmp_path / "lines.txt").exists() and (tmp_path / "bundle-1.txt").exists()


def test_construct_q2_negative_multiplier(tmp_path, capsys):
    code, out, _ = run(capsys, "construct", "--q", "2", "--multipliers", "-1", "--out", str(tmp_path), "--json")
    assert code == 0
    assert json.loads(out)["multipliers"] == [6]
    assert (tmp_path / "H.txt").read_text().startswith("7 14\n")


def test_construct_rejects_non_prime_power(tmp_path, capsys):
    code, _, err = run(capsys, "construct", "--q", "6", "--out", str(tmp_path))
    assert code == 2
    assert "6 is not a prime power" in err


def test_search_failure_exit(tmp_path, capsys):
    code, _, err = run(capsys, "construct", "--q", "3", "--t", "2", "--multipliers", "2", "--out", str(tmp_path))
    assert code == 1
    assert "found only 1 of 2" in err


def test_verify_round_trip_and_corruption(tmp_path, capsys):
    run(capsys, "construct", "--q", "5", "--t", "2", "--out", str(tmp_path))
    code, out, _ = run(capsys, "verify", "--in", str(tmp_path))
    assert code == 0
    assert all(line.startswith("PASS") for line in out.splitlines())
    assert "PASS bundles-disjoint" in out

    H = tmp_path / "H.txt"
    rows = H.read_text().splitlines()
    rows[1] = ("1" if rows[1][1] == "0" else "0").join([rows[1][:1], rows[1][2:]])
    H.write_text("\n".join(rows) + "\n")
    code, out, _ = run(capsys, "verify", "--in", str(H), "--json")
    assert code == 1
    status = {r["predicate"]: r["status"] for r in json.loads(out)}
    assert status["column-weight"] == "FAIL"
    assert status["row-weight"] == "FAIL"


def test_verify_lines_only(tmp_path, capsys):
    run(capsys, "construct", "--q", "4", "--out", str(tmp_path))
    code, out, _ = run(capsys, "verify", "--in", str(tmp_path / "lines.txt"))
    assert code == 0
    assert "PASS plane-axioms" in out
    assert "SKIP bundle-axioms" in out


def test_verify_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("what is this file\n")
    assert run(capsys, "verify", "--in", str(bad))[0] == 2
    assert run(capsys, "verify", "--in", str(tmp_path / "missing"))[0] == 2


def test_params(capsys):
    code, out, _ = run(capsys, "params", "--q", "3", "--t", "1")
    assert code == 0
    assert "n=26" in out and "k=14" in out and "sH=2" in out
    _, out, _ = run(capsys, "params", "--q", "11", "--json")
    assert json.loads(out) == {"q": 11, "t": 1, "multipliers": [2], "n": 266, "k": 134, "sH": 2,
                               "v": 12, "w": 24, "radius": 3}


def test_mindist(capsys):
    assert run(capsys, "mindist", "--q", "4", "--t", "1")[1].strip() == "6"
    code, out, _ = run(capsys, "mindist", "--q", "3", "--json")
    assert json.loads(out)["d"] == 5
    assert run(capsys, "mindist", "--q", "5", "--budget", "10")[0] == 3


def test_decode(capsys):
    word = ["0"] * 26
    word[4] = "1"
    code, out, _ = run(capsys, "decode", "--q", "3", "--word", "".join(word), "--error", "".join(word), "--json")
    assert code == 0
    d = json.loads(out)
    assert d["success"] and d["rounds"] == 1 and d["flips_per_round"] == [1]
    assert d["residual_weight"] == 0 and d["word"] == "0" * 26
    code, out, _ = run(capsys, "decode", "--q", "3", "--word", "0" * 26, "--rounds", "2", "--threshold", "3")
    assert code == 0 and out.startswith("success=true")
    assert run(capsys, "decode", "--q", "3", "--word", "0101")[0] == 2


def test_simulate_csv_and_spec_file(tmp_path, capsys):
    argv = ["simulate", "--q", "13", "--weights", "4,5", "--trials", "2000", "--seed", "42", "--rounds", "1"]
    code, out, err = run(capsys, *argv)
    assert code == 0
    assert out.splitlines()[0] == "q,t,weight,trials,successes,probability,ci95"
    assert len(out.splitlines()) == 3
    assert "# spec" in err
    assert run(capsys, *argv)[1] == out

    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"q": 13, "weights": [4, 5], "trials": 2000, "seed": 42}))
    assert run(capsys, "simulate", "--spec", str(spec))[1] == out
    _, js, _ = run(capsys, "simulate", "--spec", str(spec), "--json")
    assert [r["successes"] for r in json.loads(js)["rows"]] == [int(l.split(",")[4]) for l in out.splitlines()[1:]]


def test_simulate_default_weights(capsys):
    _, out, _ = run(capsys, "simulate", "--q", "7", "--trials", "10")
    assert [l.split(",")[2] for l in out.splitlines()[1:]] == ["3", "4", "5"]
    assert run(capsys, "simulate", "--trials", "10")[0] == 2


def test_unknown_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["params", "--q", "3", "--colour", "red"])
    assert info.value.code == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "bundle_mdpc.cli", "params", "--q", "2"],
                         capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.strip() == "n=14 k=7 v=3 w=6 sH=2 radius=0"
