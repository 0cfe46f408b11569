"""CLI behavior: exit codes, report files, determinism."""

import json

import pytest
from click.testing import CliRunner

from spingeo.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def run_cli(runner, args):
    return runner.invoke(main, args, catch_exceptions=False)


def test_verify_pass_exit_zero(runner, tmp_path):
    out = tmp_path / "report.json"
    result = run_cli(runner, [
        "verify", "--space", "flat", "--dim", "3",
        "--suite", "clifford-axioms", "--tol", "1e-10",
        "--samples", "20", "--out", str(out)])
    assert result.exit_code == 0
    report = json.loads(out.read_text())
    assert report["overall_pass"] is True
    assert all(c["passed"] for c in report["checks"] if c["asserted"])


def test_verify_writes_json_to_stdout(runner):
    result = run_cli(runner, [
        "verify", "--space", "flat", "--dim", "2",
        "--suite", "fierz", "--samples", "10"])
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["config"]["dim"] == 2
    assert "PASS" in result.stderr


def test_config_error_exit_two(runner):
    result = runner.invoke(main, [
        "verify", "--space", "sphere", "--dim", "3", "--curvature", "-2.0",
        "--suite", "fierz"])
    assert result.exit_code == 2
    assert "invalid configuration" in result.output


def test_unknown_suite_exit_two(runner):
    result = runner.invoke(main, [
        "verify", "--space", "flat", "--dim", "3", "--suite", "bogus"])
    assert result.exit_code == 2


def test_failing_tolerance_exit_one(runner, tmp_path):
    # an impossibly tight residual tolerance fails the curvature sweeps
    out = tmp_path / "r.json"
    result = run_cli(runner, [
        "verify", "--space", "sphere", "--dim", "2", "--curvature", "1.0",
        "--suite", "geometry", "--samples", "15", "--tol", "1e-30",
        "--out", str(out)])
    assert result.exit_code == 1
    report = json.loads(out.read_text())
    assert report["overall_pass"] is False


def test_table_command_writes_structure_constants(runner, tmp_path):
    out = tmp_path / "t.json"
    result = run_cli(runner, [
        "table", "--space", "flat", "--dim", "3", "--suite", "conformal",
        "--samples", "30", "--out", str(out)])
    assert result.exit_code == 0
    report = json.loads(out.read_text())
    tables = report["tables"]["conformal"]
    assert tables["bases"]["cky1"]["dimension"] == 10
    entries = tables["brackets"]["even_even"]
    assert entries and all("coeffs" in e for e in entries)


def test_reports_byte_identical_apart_from_timings(runner, tmp_path):
    files = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        result = run_cli(runner, [
            "verify", "--space", "sphere", "--dim", "3", "--curvature", "1.0",
            "--suite", "integrability", "--samples", "30", "--seed", "7",
            "--out", str(out)])
        assert result.exit_code == 0
        files.append(out)
    reports = [json.loads(f.read_text()) for f in files]
    for rep in reports:
        rep.pop("timings")
    assert (json.dumps(reports[0], sort_keys=True)
            == json.dumps(reports[1], sort_keys=True))
