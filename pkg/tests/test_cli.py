import json

import pytest

from grasshopper import cli, limits

FIELDS = {"schema", "schema_version", "artifact_version", "backend", "command", "inputs",
          "inputs_digest", "seed", "ok", "results", "timings"}


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    report = json.loads(out.out)
    assert set(report) == FIELDS
    return code, report, out.err


def test_ck_exact(capsys):
    code, rep, err = run(capsys, "ck", "2", "--mode", "exact")
    assert code == 0 and rep["results"]["value"] == "2" and rep["seed"] is None
    assert "c_2 = 2" in err


def test_ck_eval(capsys):
    code, rep, _ = run(capsys, "ck", "3", "--mode", "eval", "--seed", "4")
    assert code == 0 and rep["results"]["value"] == "90"
    assert rep["results"]["note"] == "evaluation oracle" and rep["seed"] == 4


def test_ck_mod(capsys):
    code, rep, _ = run(capsys, "ck", "3", "--mode", "mod", "--prime", "5")
    assert code == 0 and rep["results"]["value"] == "0"


def test_ck_big_value_is_string(capsys):
    _, rep, _ = run(capsys, "ck", "7")
    assert rep["results"]["approx"] == "8.587e34" and rep["results"]["match"] is True
    assert int(rep["results"]["value"]) > 2**64


def test_report_is_deterministic(capsys):
    _, a, _ = run(capsys, "campaign", "--trials", "50", "--seed", "9")
    _, b, _ = run(capsys, "campaign", "--trials", "50", "--seed", "9")
    a.pop("timings"), b.pop("timings")
    assert a == b


def test_input_error_exit(capsys):
    code, rep, _ = run(capsys, "ck", "3", "--mode", "mod", "--prime", "9")
    assert code == 2 and rep["results"]["kind"] == "input"
    code, _, _ = run(capsys, "ck", "3", "--mode", "mod")
    assert code == 2


def test_capacity_flag_wins_over_env(capsys, monkeypatch):
    monkeypatch.setenv("GRASSHOPPER_MEMO_ENTRIES", "10")
    code, rep, _ = run(capsys, "ck", "4")
    assert code == 3 and rep["results"]["cap"] == "memo_entries"
    code, _, _ = run(capsys, "--memo-cap", "1000", "ck", "4")
    assert code == 0
    assert limits.get() == limits.Limits()


def test_alpha(capsys):
    code, rep, _ = run(capsys, "alpha", "3", "2", "1", "4", "1", "0")
    assert code == 0 and rep["results"] == {"value": "2", "degree": 5}


@pytest.mark.parametrize(
    "doc, verdict",
    [
        ({"jumps": [-1, 1, 2, 3], "mines": [1, 2, 3]}, "blocked"),
        ({"jumps": [1, 2, 3], "mines": [1, 2]}, "found"),
        ({"jumps": [5], "mines": []}, "found"),
    ],
)
def test_solve(capsys, tmp_path, doc, verdict):
    path = tmp_path / "inst.json"
    path.write_text(json.dumps(doc))
    code, rep, _ = run(capsys, "solve", str(path), "--exhaustive-check")
    assert code == 0 and rep["results"]["verdict"] == verdict
    assert rep["results"]["exhaustive_found"] == (verdict == "found")


def test_solve_olympiad(capsys, tmp_path):
    path = tmp_path / "inst.json"
    path.write_text(json.dumps({"jumps": ["1/2", 2, 3], "mines": [2, "5/2"]}))
    code, rep, _ = run(capsys, "solve", str(path), "--olympiad")
    assert code == 0 and rep["results"]["valid"]
    path.write_text(json.dumps({"jumps": [-1, 2], "mines": []}))
    code, _, _ = run(capsys, "solve", str(path), "--olympiad")
    assert code == 2


def test_solve_stdin_and_bad_file(capsys, monkeypatch, tmp_path):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO('{"jumps": [1, 2], "mines": [2]}'))
    code, rep, _ = run(capsys, "solve", "-")
    assert code == 0 and rep["results"]["route"] == [1, 2]
    code, _, _ = run(capsys, "solve", str(tmp_path / "missing.json"))
    assert code == 2


def test_tables(capsys):
    code, rep, _ = run(capsys, "tables", "--max-k", "8", "--max-n", "12", "--sharp-n", "8")
    res = rep["results"]
    assert code == 0
    assert [r["match"] for r in res["table2"]] == [True] * 8
    assert all(r["blocked"] for r in res["table1"])
    assert all(r["verified"] for r in res["factorizations"])


def test_campaign(capsys):
    code, rep, _ = run(capsys, "campaign", "--trials", "0")
    assert code == 0 and rep["results"]["violations"] == 0
    code, rep, _ = run(capsys, "campaign", "--n", "3", "--nonzero", "--mines-at-bound", "--trials", "200")
    assert code == 0 and rep["inputs"]["zero_mode"] == "nonzero" and rep["seed"] == 0


def test_modscan(capsys):
    code, rep, _ = run(capsys, "modscan", "4", "--bound", "100")
    assert code == 0 and rep["results"]["divisors"] == [2, 3, 7, 97]
    code, rep, _ = run(capsys, "modscan", "3", "--primes", "5", "7")
    assert [r["residue"] for r in rep["results"]["rows"]] == [0, 6]


def test_factor_verify(capsys):
    code, rep, _ = run(capsys, "factor-verify")
    assert code == 0 and len(rep["results"]["claims"]) == 4
    code, rep, _ = run(capsys, "factor-verify", "4", "--factors", "2^5,3^3,7,97")
    assert code == 0
    code, rep, _ = run(capsys, "factor-verify", "3", "--factors", "2,3^2,7")
    assert code == 1
    code, rep, _ = run(capsys, "factor-verify", "4", "--factors", "2^5,3^3,679")
    assert code == 2
    code, rep, _ = run(capsys, "factor-verify", "7", "--bound", "1000")
    assert code == 0 and "partial" in rep["results"]
