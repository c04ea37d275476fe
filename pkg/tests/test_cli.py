"""
Test the spaceform command line: output formats, exit codes and session logging
"""
import sys
import os
parent_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.append(parent_dir)

import json
import math

import pytest

from config import EPS_DOM, SEED_ENV_VAR
from spaceform.kappa_kernel import domain_tolerance
from spaceform_cli import (
    EXIT_DOMAIN,
    EXIT_OK,
    EXIT_USAGE,
    RunSession,
    build_parser,
    resolve_seed,
    run,
)


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_triangle_solve(capsys):
    assert run(["triangle", "solve", "--kappa", "0", "--sss", "3", "4", "5"]) == EXIT_OK
    payload = _json(capsys)
    assert payload["gamma"] == pytest.approx(math.pi / 2.0, abs=1e-14)
    assert payload["area"] == pytest.approx(6.0, abs=1e-12)


def test_spherical_octant_from_the_command_line(capsys):
    half_pi = repr(math.pi / 2.0)
    assert run(["triangle", "solve", "--kappa", "1", "--sss", half_pi, half_pi, half_pi]) == EXIT_OK
    assert _json(capsys)["area"] == pytest.approx(math.pi / 2.0, abs=1e-12)


def test_infeasible_triangle_exits_with_domain_code(capsys):
    assert run(["triangle", "solve", "--kappa", "0", "--sss", "1", "1", "3"]) == EXIT_DOMAIN
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "InfeasibleError" in captured.err


def test_regular_square(capsys):
    assert run(["regular", "--kappa", "0", "--n", "4", "--side", "1"]) == EXIT_OK
    payload = _json(capsys)
    assert payload["area"] == pytest.approx(1.0, abs=1e-14)
    assert len(payload["vertices"]) == 4


def test_documented_examples(capsys):
    assert run(["regular", "--kappa", "0", "--n", "4", "--area", "2"]) == EXIT_OK
    square = _json(capsys)
    assert square["r"] == pytest.approx(1.0, abs=1e-14)
    assert square["side"] == pytest.approx(math.sqrt(2.0), abs=1e-14)
    assert run(["iso", "circle", "--kappa", "1", "--area", "6.283185307"]) == EXIT_OK
    circle = _json(capsys)
    assert circle["optimal_radius"] == pytest.approx(math.pi / 2.0, abs=1e-4)
    assert circle["perimeter"] == pytest.approx(2.0 * math.pi, abs=1e-8)


def test_regular_usage_errors(capsys):
    assert run(["regular", "--kappa", "0", "--n", "4", "--angle", "1.5"]) == EXIT_USAGE
    assert run(["regular", "--kappa", "0", "--n", "4", "--side", "1", "--r", "1"]) == EXIT_USAGE
    assert run(["regular", "--kappa", "2", "--n", "4", "--side", "1"]) == EXIT_USAGE
    assert run(["nonsense"]) == EXIT_USAGE


def test_iso_circle_and_dual(capsys):
    assert run(["iso", "circle", "--kappa", "1", "--area", repr(2.0 * math.pi)]) == EXIT_OK
    circle = _json(capsys)
    assert circle["optimal_radius"] == pytest.approx(math.pi / 2.0, abs=1e-12)
    assert circle["deficit"] == 0.0

    assert run(["iso", "dual", "--kappa", "0", "--perimeter", repr(2.0 * math.pi)]) == EXIT_OK
    dual = _json(capsys)
    assert dual["area"] == pytest.approx(math.pi, abs=1e-14)
    assert dual["optimal_radius"] == pytest.approx(1.0, abs=1e-14)

    assert run(["iso", "circle", "--kappa", "1", "--area", "7"]) == EXIT_DOMAIN


def test_iso_limit_csv(capsys):
    assert run(["iso", "limit", "--kappa", "-1", "--area", "1", "--n-max", "48"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == "n,r_n,perimeter_n,deficit_n"
    assert [line.split(",")[0] for line in lines[1:]] == ["3", "6", "12", "24", "48"]


def test_iso_limit_json(capsys):
    assert run(["iso", "limit", "--kappa", "1", "--area", "2", "--n-max", "12", "--format", "json"]) == EXIT_OK
    payload = _json(capsys)
    assert [row["n"] for row in payload["rows"]] == [3, 6, 12]


def test_iso_minimize(capsys):
    argv = ["--workers", "1", "iso", "minimize", "--kappa", "0", "--n", "3",
            "--area", repr(math.sqrt(3.0) / 4.0), "--seeds", "1", "--seed", "1"]
    assert run(argv) == EXIT_OK
    payload = _json(capsys)
    assert payload["perimeter"] == pytest.approx(3.0, rel=1e-4)
    assert len(payload["polygon"]["vertices"]) == 3


def test_polygon_queries(capsys):
    square = "[[0, 0], [1, 0], [1, 1], [0, 1]]"
    assert run(["polygon", "area", "--kappa", "0", "--vertices", square]) == EXIT_OK
    assert _json(capsys)["area"] == pytest.approx(1.0, abs=1e-15)
    assert run(["polygon", "perimeter", "--kappa", "0", "--vertices", square]) == EXIT_OK
    assert _json(capsys)["perimeter"] == pytest.approx(4.0, abs=1e-15)
    assert run(["polygon", "convex", "--kappa", "0", "--vertices", square]) == EXIT_OK
    assert _json(capsys)["convex"] is True

    octant = "[[0, 0, 1], [1, 0, 0], [0, 1, 0]]"
    assert run(["polygon", "angles", "--kappa", "1", "--vertices", octant]) == EXIT_OK
    for angle in _json(capsys)["angles"]:
        assert angle == pytest.approx(math.pi / 2.0, abs=1e-14)

    assert run(["polygon", "area", "--kappa", "0", "--vertices", "not json"]) == EXIT_USAGE
    assert run(["polygon", "area", "--kappa", "1", "--vertices", "[[1, 1, 1], [0, 1, 0], [0, 0, 1]]"]) == EXIT_DOMAIN


def test_polygon_arm(capsys):
    assert run(["polygon", "arm", "--kappa", "0", "--sides", "1", "1", "--angles", repr(math.pi / 2.0)]) == EXIT_OK
    assert _json(capsys)["closing_length"] == pytest.approx(math.sqrt(2.0), abs=1e-14)
    assert run(["polygon", "arm", "--kappa", "0", "--sides", "1", "1"]) == EXIT_USAGE


def test_verify_identities(capsys):
    assert run(["verify", "identities", "--samples", "20", "--seed", "3"]) == EXIT_OK
    captured = capsys.readouterr()
    payload = json.loads(captured.out)
    assert payload["seed"] == 3
    assert payload["passed"] is True
    assert [suite["name"] for suite in payload["suites"]] == ["identities"]
    assert "identities" in captured.err


def test_verify_csv_is_deterministic(capsys):
    argv = ["verify", "halfangle", "--samples", "5", "--seed", "9", "--format", "csv"]
    assert run(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert run(argv) == EXIT_OK
    assert capsys.readouterr().out == first
    assert first.startswith("suite,kappa,check,residual,tolerance,passed\n")


def test_seed_resolution(monkeypatch):
    monkeypatch.delenv(SEED_ENV_VAR, raising=False)
    assert resolve_seed(5) == 5
    monkeypatch.setenv(SEED_ENV_VAR, "17")
    assert resolve_seed(None) == 17
    monkeypatch.setenv(SEED_ENV_VAR, "seventeen")
    assert run(["verify", "identities", "--samples", "2"]) == EXIT_USAGE


def test_eps_dom_is_restored(capsys):
    assert run(["--eps-dom", "1e-6", "triangle", "solve", "--kappa", "-1", "--sas", "1", "1", "1"]) == EXIT_OK
    assert domain_tolerance() == EPS_DOM
    assert run(["--eps-dom", "-1", "triangle", "solve", "--kappa", "-1", "--sas", "1", "1", "1"]) == EXIT_DOMAIN
    assert domain_tolerance() == EPS_DOM


def test_session_files(tmp_path, capsys):
    log_dir, report_dir = tmp_path / "logs", tmp_path / "reports"
    argv = ["--log-dir", str(log_dir), "--report-dir", str(report_dir),
            "regular", "--kappa", "1", "--n", "5", "--area", "1"]
    assert run(argv) == EXIT_OK
    logs = list(log_dir.glob("spaceform_*.log"))
    sessions = list(report_dir.glob("session_SID_*.json"))
    assert len(logs) == 1 and len(sessions) == 1
    info = json.loads(sessions[0].read_text())
    assert info["run_config"]["command"] == "regular"
    assert "SESSION_START" in logs[0].read_text()


def test_session_ids():
    session = RunSession(["verify", "all"], 7)
    assert session.session_id.startswith("SID_")
    assert session.get_log_suffix().endswith(session.session_id)
    assert build_parser().parse_args(["verify", "all"]).suites == ["all"]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
