import json
import subprocess
import sys

import pytest

from orthodl.cli import main, run


def report(argv):
    code, text = run(argv)
    return code, json.loads(text)


def test_verify_counts():
    code, rep = report(["verify-counts", "--p", "3", "--d", "2"])
    assert code == 0 and rep["schema"] == "1" and rep["pass"]
    assert rep["case_counts"]["counts"] == [[1, 30, 81]]
    assert all(c["provenance"] for c in rep["checks"])
    code, rep = report(["verify-counts", "--p", "5", "--d", "1"])
    assert rep["checks"][0]["actual"] == 26


def test_verify_counts_samples_large_population():
    code, rep = report(["verify-counts", "--p", "3", "--d", "3", "--samples", "120", "--seed", "2"])
    assert code == 0
    info = rep["case_counts"]
    assert info["sampled"] and info["W_prime_checked"] == 120 and info["seed"] == 2


def test_chow_json_and_csv():
    code, rep = report(["chow", "--p-max", "10", "--d-max", "5"])
    row = next(r for r in rep["table"] if r["p"] == 3 and r["d"] == 3)
    assert code == 0 and row["degree_closed"] == "416"
    code, rep = report(["chow", "--p-max", "10", "--d-max", "1"])
    assert {r["degree_closed"] for r in rep["table"]} == {"2"}
    code, text = run(["chow", "--p-max", "5", "--d-max", "2", "--format", "csv"])
    assert text.splitlines()[0].startswith("p,d,analog_closed")
    assert len(text.splitlines()) == 1 + 2 * 2


def test_enumerate():
    code, rep = report(["enumerate", "--p", "3", "--d", "1", "--ext", "2"])
    assert rep["summary"] == {"points": 82, "strata": {"0": 10, "1": 72}}
    code, rep = report(["enumerate", "--p", "3", "--d", "1", "--ext", "1"])
    assert rep["summary"] == {"points": 10, "strata": {"0": 10}}
    for comp in ("+", "-"):
        code, rep = report(["enumerate", "--p", "5", "--d", "0", "--component", comp])
        assert rep["summary"]["points"] == 1


def test_degree_and_example():
    code, rep = report(["degree", "--p", "3", "--d", "1", "--kmax", "4"])
    assert code == 0 and rep["result"]["degree"] == 2
    assert rep["result"]["elapsed_ms"] is None
    code, rep = report(["degree", "--p", "3", "--d", "1", "--kmax", "4", "--timings"])
    assert isinstance(rep["result"]["elapsed_ms"], int)
    code, rep = report(["example-d1", "--p", "7", "--samples", "50"])
    assert code == 0 and rep["pass"]


@pytest.mark.parametrize("argv,code", [
    (["degree", "--p", "3", "--d", "1", "--kmax", "5"], 1),  # cloud too small
    (["enumerate", "--p", "3", "--d", "2", "--ext", "2", "--budget-ops", "10"], 2),
    (["degree", "--p", "4"], 3),
    (["chow", "--nope"], 3),
    (["enumerate", "--format", "csv"], 3),
    (["frobnicate"], 3),
    (["verify-counts", "--p", "2", "--d", "1"], 3),
])
def test_exit_codes(argv, code):
    assert run(argv)[0] == code


def test_out_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["chow", "--p-max", "5", "--d-max", "2", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["command"] == "chow"
    assert capsys.readouterr().out == ""


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "orthodl", "chow", "--p-max", "3", "--d-max", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["pass"]


def test_determinism():
    for argv in (["verify-counts", "--p", "3", "--d", "3", "--samples", "100", "--seed", "9"],
                 ["degree", "--p", "5", "--d", "1", "--kmax", "4", "--subset", "20", "--seed", "1"],
                 ["example-d1", "--p", "11", "--samples", "40", "--seed", "6"]):
        assert run(argv) == run(argv)
