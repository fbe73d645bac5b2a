from __future__ import annotations

import io
import json
import subprocess
import sys

from nbcrank.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_verify_single_case_json():
    code, out, _ = run("verify", "--case", "eq-1-6", "--order", "60")
    assert code == 0
    doc = json.loads(out)
    assert doc["id"] == "eq-1-6" and doc["status"] == "verified" and doc["order"] == 60
    assert json.dumps(doc, sort_keys=True) == out.strip()


def test_verify_glob_counts_lemmas():
    code, out, _ = run("verify", "--case", "eq-2-*", "--order", "200")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 13
    assert all(json.loads(l)["status"] == "verified" for l in lines)


def test_unknown_case_lists_ids():
    code, out, err = run("verify", "--case", "no-such-id")
    assert code == 2 and out == ""
    assert "eq-1-6" in err and "ramanujan-5n4" in err


def test_usage_errors_exit_two():
    assert run()[0] == 2
    assert run("verify", "--case", "eq-1-6", "--order", "0")[0] == 2
    assert run("table", "--k", "1", "--n-max", "3")[0] == 2
    assert run("congruence", "--case", "nope")[0] == 2


def test_table_csv():
    code, out, _ = run("table", "--k", "2", "--m", "5", "--n-max", "2", "--self-check")
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0] == "n,r0,r1,r2,r3,r4,row_sum"
    assert rows[1] == "0,0,0,0,0,0,0"
    assert rows[2] == "1,0,1,0,0,0,1"
    assert rows[3] == "2,1,1,2,0,0,4"


def test_table_json_row_sums():
    code, out, _ = run("table", "--k", "3", "--m", "7", "--n-max", "10", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert all(sum(r["values"]) == r["row_sum"] for r in doc["rows"])


def test_congruence_commands():
    assert run("congruence", "--case", "eq-1-3", "--n-max", "100")[0] == 0
    assert run("congruence", "--case", "eq-1-5-t2", "--n-max", "100")[0] == 0
    code, out, err = run("congruence", "--case", "eq-1-3", "--n-max", "30", "--weights", "1,2,3,5")
    assert code == 1
    assert "first violation at n=" in err
    assert json.loads(out)["violations"]


def test_series_command():
    code, out, _ = run("series", "--expr", "P(1,1)", "--order", "8", "--format", "csv")
    assert code == 0
    coeffs = [l.split(",")[1] for l in out.strip().splitlines()[1:]]
    assert coeffs == ["1", "-1", "-1", "0", "0", "1", "0", "1"]
    code, out, _ = run("series", "--expr", "1/P(1,1)", "--order", "6")
    assert [l.split("\t")[1] for l in out.strip().splitlines()] == ["1", "1", "2", "3", "5", "7"]
    code, out, _ = run("series", "--expr", "P(2,5)*P(3,5)*P(5,5) - theta", "--order", "100", "--format", "json")
    doc = json.loads(out)
    assert {c["coefficient"] for c in doc["coefficients"]} == {"0"}


def test_series_rationals_and_parse_errors():
    code, out, _ = run("series", "--expr", "(1 - q)/2", "--order", "3")
    assert out.splitlines() == ["0\t1/2", "1\t-1/2", "2\t0"]
    code, _, err = run("series", "--expr", "P(1,1", "--order", "3")
    assert code == 2 and "position" in err
    code, _, err = run("series", "--expr", "1/(1+q)", "--order", "3")
    assert code == 2
    code, _, err = run("series", "--expr", "2 $ q", "--order", "3")
    assert code == 2 and "position 2" in err


def test_verify_all_plain():
    code, out, _ = run("verify-all", "--format", "plain")
    assert code == 0
    assert len(out.strip().splitlines()) >= 33


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "nbcrank", "verify", "--case", "eq-2-3"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["status"] == "verified"
