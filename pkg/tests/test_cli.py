import csv
import io
import json
import os
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "simplex_lab"]


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    env.pop("SIMPLEX_LAB_SEED", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        CLI + list(args), capture_output=True, text=True, env=env, timeout=600
    )


def test_verify_pass_exit_zero():
    r = run_cli("verify", "--distance", "cardinality", "--n", "4", "--space", "finite:3")
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)
    assert report["schema"] == "simplex-lab/1"
    assert report["status"] == "pass"
    assert all(v["status"] == "pass" for v in report["verdicts"])


def test_verify_repetition_failure_exit_one():
    r = run_cli(
        "verify", "--distance", "arithmetic-mean", "--n", "3", "--checks", "repetition",
        "--budget", "2000",
    )
    assert r.returncode == 1
    report = json.loads(r.stdout)
    assert report["status"] == "fail"
    (v,) = [v for v in report["verdicts"] if v["property"] == "repetition-invariance"]
    ce = v["counterexample"]
    # same two-element value set, different multiplicities, different values
    assert abs(ce["value_a"] - ce["value_b"]) > 1e-9


def test_config_error_exit_two():
    r = run_cli("verify", "--distance", "inner-interval-power:p=2", "--n", "3")
    assert r.returncode == 2
    assert r.stdout == ""
    assert "error:" in r.stderr
    assert "n < 2^p" in r.stderr


def test_unknown_distance_exit_two():
    r = run_cli("constants", "--distance", "no-such-thing", "--n", "3")
    assert r.returncode == 2
    assert "known ids" in r.stderr


def test_constants_inner_interval():
    r = run_cli(
        "constants", "--distance", "inner-interval", "--n", "5", "--k", "2..5",
        "--budget", "20000",
    )
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)
    by_name = {row["name"]: row for row in report["rows"]}
    assert by_name["K*_5"]["observed"] == pytest.approx(2 / 5, abs=1e-9)
    assert by_name["K*_5,2"]["observed"] == pytest.approx(1.0, abs=1e-9)
    assert by_name["K*_5,3"]["observed"] == pytest.approx(2 / 3, abs=1e-9)
    assert by_name["K*_5,4"]["observed"] == pytest.approx(1 / 2, abs=1e-9)
    assert by_name["K*_5,5"]["observed"] == pytest.approx(2 / 5, abs=1e-9)
    for row in report["rows"]:
        w = row["witness"]
        assert w is not None and "tuple" in w and "z" in w and "ratio" in w


def test_constants_enclosing_area_n3():
    r = run_cli(
        "constants", "--distance", "enclosing-area", "--n", "3", "--budget", "20000"
    )
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)
    (row,) = [row for row in report["rows"] if row["name"] == "K*_3"]
    assert row["observed"] == pytest.approx(2 / 3, abs=1e-6)


def test_constants_two_anchor():
    r = run_cli(
        "constants", "--distance", "two-anchor:s=1/3", "--n", "4", "--k", "2..4"
    )
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)
    by_name = {row["name"]: row for row in report["rows"]}
    assert by_name["K*_4"]["observed"] == pytest.approx(1 / 3, abs=1e-12)
    assert by_name["K*_4,2"]["observed"] == pytest.approx(1.0, abs=1e-12)
    assert by_name["K*_4,3"]["observed"] == pytest.approx(1 / 2, abs=1e-12)
    assert by_name["K*_4,4"]["observed"] == pytest.approx(1 / 3, abs=1e-12)


def test_table1_small_budget():
    r = run_cli("table1", "--n", "4", "--budget", "4000")
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)
    names = [row["name"] for row in report["rows"]]
    for want in ("drastic", "cardinality", "arithmetic-mean", "enclosing-radius"):
        assert any(want in name for name in names), names
    for row in report["rows"]:
        assert row["status"] in ("pass", "info"), row


def test_multidistance_family_pass():
    r = run_cli(
        "multidistance", "--family", "cardinality", "--arities", "2..4",
        "--space", "finite:4", "--budget", "4000",
    )
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)
    assert report["status"] == "pass"


def test_multidistance_family_fail():
    r = run_cli(
        "multidistance", "--family", "line-count", "--arities", "2..4", "--budget", "4000"
    )
    assert r.returncode == 1
    report = json.loads(r.stdout)
    (v,) = [v for v in report["verdicts"] if v["property"] == "multidistance"]
    assert v["status"] == "fail"
    ce = v["counterexample"]
    assert ce["lhs"] > ce["rhs"]


def test_json_deterministic_modulo_timestamp():
    args = (
        "constants", "--distance", "diameter", "--n", "3", "--budget", "4000",
        "--seed", "7",
    )
    a = json.loads(run_cli(*args).stdout)
    b = json.loads(run_cli(*args).stdout)
    a.pop("generated_at")
    b.pop("generated_at")
    assert a == b


def test_seed_from_environment_and_flag_priority():
    base = ("constants", "--distance", "diameter", "--n", "3", "--budget", "2000")
    r_env = run_cli(*base, env_extra={"SIMPLEX_LAB_SEED": "9"})
    assert json.loads(r_env.stdout)["config"]["seed"] == 9
    r_flag = run_cli(*base, "--seed", "11", env_extra={"SIMPLEX_LAB_SEED": "9"})
    assert json.loads(r_flag.stdout)["config"]["seed"] == 11
    r_default = run_cli(*base)
    assert json.loads(r_default.stdout)["config"]["seed"] == 42


def test_csv_and_text_formats():
    r = run_cli(
        "constants", "--distance", "cardinality", "--n", "3", "--space", "finite:3",
        "--format", "csv",
    )
    assert r.returncode == 0
    rows = list(csv.DictReader(io.StringIO(r.stdout)))
    assert rows and "name" in rows[0] and "observed" in rows[0]

    r = run_cli(
        "verify", "--distance", "cardinality", "--n", "3", "--space", "finite:3",
        "--format", "text",
    )
    assert r.returncode == 0
    assert "status: pass" in r.stdout


def test_out_writes_file(tmp_path):
    out = tmp_path / "report.json"
    r = run_cli(
        "constants", "--distance", "cardinality", "--n", "3", "--space", "finite:3",
        "--out", str(out),
    )
    assert r.returncode == 0
    report = json.loads(out.read_text())
    assert report["schema"] == "simplex-lab/1"


def test_verify_strong_checks_auto_constant():
    # standard + repetition-invariant: the optimal constant is derived per k
    r = run_cli(
        "verify", "--distance", "cardinality", "--n", "4", "--space", "finite:4",
        "--checks", "strong", "--k", "2..4", "--budget", "8000",
    )
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)
    props = [v["property"] for v in report["verdicts"]]
    assert any("strong-simplex(k=2" in p for p in props)
    assert any("strong-simplex(k=4" in p for p in props)


def test_verify_strong_checks_explicit_constant():
    # the mean has no derivable constant (not repetition-invariant, not
    # nonincreasing), so one must be given; without it the config fails
    r = run_cli(
        "verify", "--distance", "arithmetic-mean", "--n", "4", "--checks", "strong",
        "--k", "3", "--strong-constant", "1/2", "--budget", "8000",
    )
    assert r.returncode == 0, r.stderr
    report = json.loads(r.stdout)
    assert report["status"] == "pass"
    r = run_cli(
        "verify", "--distance", "arithmetic-mean", "--n", "4", "--checks", "strong",
        "--k", "3", "--budget", "8000",
    )
    assert r.returncode == 2


def test_space_parser_variants():
    r = run_cli("verify", "--distance", "cardinality", "--n", "3", "--space", "finite:a,b,c")
    assert r.returncode == 0
    r = run_cli("verify", "--distance", "diameter", "--n", "3", "--space", "real:0,1",
                "--budget", "2000")
    assert r.returncode == 0
    r = run_cli("verify", "--distance", "diameter", "--n", "3", "--space", "plane",
                "--budget", "2000")
    assert r.returncode == 2  # line distance on planar points: rejected
