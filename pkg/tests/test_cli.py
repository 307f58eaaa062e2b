import csv
import io
import json

import pytest

from primelab.cli import reproduce_paper, run_command
from primelab.reporting import Report, format_report


def run(capsys, *argv):
    code = run_command(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_count_twin_example(capsys):
    code, doc = run_json(capsys, "count", "twin", "--x", "20")
    assert code == 0
    assert doc["rows"][0]["formula"] == 4
    assert doc["rows"][0]["oracle"] == 4


def test_goldbach_five_pairs(capsys):
    code, doc = run_json(capsys, "goldbach", "--even", "100", "--mode", "exact")
    assert code == 0
    pairs = [(r["p"], r["q"]) for r in doc["rows"]]
    assert pairs == [(11, 89), (17, 83), (29, 71), (41, 59), (47, 53)]


def test_schinzel_example(capsys):
    code, doc = run_json(capsys, "schinzel", "--num", "11", "--den", "13")
    assert code == 0
    assert doc["rows"][0]["k"] == 9
    assert (doc["rows"][0]["p"], doc["rows"][0]["q"]) == (197, 233)
    # remainder tables in two-row form follow
    assert any(r.get("row") == "mod" for r in doc["rows"][1:])


def test_crt_solve_tokens(capsys):
    code, doc = run_json(capsys, "crt", "2:3", "3:5", "2:7")
    assert code == 0
    assert doc["rows"][0] == {"value": 23, "modulus": 105}


def test_crt_enumerate_allow(capsys):
    code, doc = run_json(capsys, "crt", "--allow", "3=1,2", "--allow", "5=1",
                         "--lo", "1", "--hi", "30")
    assert code == 0
    assert [r["n"] for r in doc["rows"]] == [1, 11, 16, 26]


def test_bertrand_scan_cli(capsys):
    code, doc = run_json(capsys, "bertrand", "--alpha", "2", "--min", "1",
                         "--max", "1000")
    assert code == 0
    assert doc["rows"][0]["failure_count"] == 0


def test_mersenne_witness_cli(capsys):
    code, doc = run_json(capsys, "mersenne-witness", "--k", "3", "--n", "2")
    assert code == 0
    assert doc["rows"][0]["verdict"] == "WITNESS"


def test_xi_sum_cli(capsys):
    code, doc = run_json(capsys, "xi", "--sum", "4", "--s", "2")
    assert code == 0
    assert doc["rows"][0]["partial_sum"] == pytest.approx(1.972222222222)


def test_usage_errors_exit_2(capsys):
    assert run_command(["no-such-command"]) == 2
    assert run_command([]) == 2
    assert run_command(["goldbach"]) == 2  # missing --even


def test_internal_errors_exit_1(capsys):
    assert run_command(["goldbach", "--even", "7"]) == 1  # odd target
    err = capsys.readouterr().err
    assert "error" in err


def test_global_flags_after_subcommand(capsys):
    code, out = run(capsys, "count", "pi", "--x", "50", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0].startswith("x,")


def test_cache_file_round_trip(tmp_path, capsys):
    cache = tmp_path / "primes.cache"
    code, _ = run(capsys, "primes", "--limit", "1000", "--cache", str(cache))
    assert code == 0 and cache.exists()
    code, doc = run_json(capsys, "primes", "--limit", "1000", "--cache", str(cache))
    assert doc["rows"][0]["count"] == 168


def test_json_and_csv_carry_identical_numbers(capsys):
    _, doc = run_json(capsys, "estimate", "psi", "--x", "1000")
    _, out = run(capsys, "estimate", "psi", "--x", "1000", "--format", "csv")
    row = next(csv.DictReader(io.StringIO(out)))
    assert float(row["estimate"]) == doc["rows"][0]["estimate"]
    assert int(row["oracle"]) == doc["rows"][0]["oracle"]


def test_seed_flag_reproducible(capsys):
    _, a = run(capsys, "--seed", "7", "count", "twin", "--x", "50", "--format", "json")
    _, b = run(capsys, "--seed", "7", "count", "twin", "--x", "50", "--format", "json")
    a, b = json.loads(a), json.loads(b)
    a.pop("runtime_ms"), b.pop("runtime_ms")
    assert a == b


def test_report_float_formatting():
    rep = Report("demo", rows=[{"v": 1 / 3, "n": 7}])
    doc = json.loads(format_report(rep, "json"))
    assert doc["rows"][0]["v"] == 0.333333333333
    assert doc["rows"][0]["n"] == 7
    table = format_report(rep, "table")
    assert "0.333333333333" in table


def test_reproduce_clean_and_forced_mismatch():
    rep = reproduce_paper()
    assert rep.params["mismatches"] == 0
    forced = reproduce_paper(force_mismatch=True)
    assert forced.params["mismatches"] == 1


def test_reproduce_cli_exit_codes(capsys):
    assert run_command(["reproduce"]) == 0
    capsys.readouterr()
    assert run_command(["reproduce", "--force-mismatch"]) == 1
