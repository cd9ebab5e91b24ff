from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from complexbessel import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def record(text: str) -> dict:
    return dict(line.split(": ", 1) for line in text.strip().splitlines())


@pytest.mark.parametrize("text, value", [
    ("0.3", 0.3), ("2i", 2j), ("-i", -1j), ("i", 1j), ("0.3+0.2i", 0.3 + 0.2j),
    ("1e-3-2e1i", 0.001 - 20j), ("-4", -4),
])
def test_parse_number(text, value):
    assert cli.parse_number(text) == value


@pytest.mark.parametrize("text", ["", "abc", "1+2j", "1ii", "i2", "nan", "inf"])
def test_parse_number_rejects(text):
    with pytest.raises(cli.UsageError):
        cli.parse_number(text)


@given(st.complex_numbers(allow_nan=False, allow_infinity=False, max_magnitude=1e300))
def test_complex_wire_round_trip(z):
    assert cli.parse_number(cli.fmt_complex(z)) == z


def test_eval_examples(capsys):
    code, out, _ = run(capsys, "eval", "J", "--nu", "0", "--z", "0")
    assert code == 0 and record(out)["value"] == "1+0i"
    code, out, _ = run(capsys, "eval", "sphericalJ", "--mu", "0.25", "--z", "4")
    assert code == 0 and abs(cli.parse_number(record(out)["value"]) - 0.5) < 1e-12
    code, out, _ = run(capsys, "eval", "J", "--nu", "0.5", "--z", "1.5707963268")
    assert abs(cli.parse_number(record(out)["value"]) - 0.6366197724) < 1e-10


def test_eval_json_echoes_inputs(capsys):
    code, out, _ = run(capsys, "eval", "H1", "--nu", "0.5", "--z", "2", "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["schema_version"] == 1 and rec["params"] == {"nu": "0.5+0i", "z": "2+0i"}


def test_eval_errors(capsys):
    assert run(capsys, "eval", "J", "--nu", "0.5")[0] == 2
    assert run(capsys, "eval", "Y", "--nu", "0.3", "--z", "0")[0] == 1
    assert run(capsys, "eval", "J", "--nu", "x", "--z", "1")[0] == 2


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "lemma2", "--nu", "0.5", "--a", "2", "--c", "0")
    assert code == 0 and record(out)["pass"] == "True"
    assert run(capsys, "verify", "main", "--mu", "0.6")[0] == 3
    assert run(capsys, "verify", "lemma2", "--nu", "0.5")[0] == 2
    assert run(capsys, "verify", "lemma2", "--nu", "0.5", "--a", "2", "--c", "0", "--tol", "1e-30")[0] == 1
    assert run(capsys, "verify", "nosuch")[0] == 2


def test_verify_consistency_json(capsys):
    code, out, _ = run(capsys, "verify", "consistency", "--mu", "0.3", "--y", "1", "--theta", "0.7",
                       "--format", "json")
    rec = json.loads(out)
    assert code == 0 and rec["rel_err"] < 1e-10 and rec["pass"] is True
    # parameters re-parse to the bindings that were used
    assert {k: cli.parse_number(v) for k, v in rec["params"].items()} == {"mu": 0.3, "y": 1.0, "theta": 0.7}


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"command": "verify", "target": "consistency",
                               "params": {"mu": "0.1i", "y": 2, "theta": 0}, "format": "csv"}))
    code, out, _ = run(capsys, "--config", str(cfg))
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].startswith("schema_version,identity,mu,y,theta,lhs_re")
    assert lines[1].split(",")[2] == "0+0.10000000000000001i"
    cfg.write_text(json.dumps({"command": "verify", "target": "consistency", "colour": "red"}))
    assert run(capsys, "--config", str(cfg))[0] == 2


def test_sweep_csv(tmp_path, capsys):
    grid = tmp_path / "grid.json"
    grid.write_text(json.dumps({"identity": "consistency",
                                "params": {"mu": [0.3, "0.1i", -0.15], "y": [0.5, 2], "theta": [0.7]}}))
    code, out, _ = run(capsys, "sweep", "--grid", str(grid), "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 1 + 6 + 1
    assert lines[-1].split(",")[2] == "summary" and lines[-1].endswith("6/6,")
    assert [ln.split(",")[2] for ln in lines[1:4]] == ["0.29999999999999999+0i"] * 2 + ["0+0.10000000000000001i"]
    again = run(capsys, "sweep", "--grid", str(grid), "--format", "csv")[1]
    assert again == out


def test_sweep_empty_grid(tmp_path, capsys):
    grid = tmp_path / "grid.json"
    grid.write_text(json.dumps({"identity": "weber", "params": {}}))
    code, out, _ = run(capsys, "sweep", "--grid", str(grid), "--format", "csv")
    assert code == 0 and out.count("\n") == 1 and out.startswith("schema_version,identity,nu,y,sign")


def test_sweep_invalid_point_is_precondition(tmp_path, capsys):
    grid = tmp_path / "grid.json"
    grid.write_text(json.dumps({"identity": "consistency", "params": {"mu": [0.7], "y": [1], "theta": [0]}}))
    assert run(capsys, "sweep", "--grid", str(grid))[0] == 3


def test_output_file(tmp_path, capsys):
    dest = tmp_path / "out.json"
    code, out, _ = run(capsys, "eval", "I", "--nu", "0.5", "--z", "1", "--format", "json", "--output", str(dest))
    assert code == 0 and out == "" and json.loads(dest.read_text())["function"] == "I"


def test_selftest_subset(capsys):
    code, out, _ = run(capsys, "selftest", "--criteria", "2,9")
    assert code == 0 and out.count("[PASS]") == 2
    assert run(capsys, "selftest", "--criteria", "99")[0] == 2
