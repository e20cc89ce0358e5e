"""Unit tests for hexagauss.cli module."""

import io
import json
from pathlib import Path

import pytest

from hexagauss.cli import (
    EXIT_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    BatchOptions,
    RunConfig,
    cmd_verify,
    main,
)


def test_cli_version(capsys):
    """Test --version flag displays version.

    Args:
        capsys: Pytest fixture for capturing stdout/stderr.
    """
    with pytest.raises(SystemExit) as exc_info:
        main(["--version"])

    assert exc_info.value.code == 0
    captured = capsys.readouterr()
    assert "hexagauss" in captured.out
    assert "0.1.0" in captured.out


def test_cli_help(capsys):
    """Test --help flag displays help.

    Args:
        capsys: Pytest fixture for capturing stdout/stderr.
    """
    with pytest.raises(SystemExit) as exc_info:
        main(["--help"])

    assert exc_info.value.code == 0
    assert "usage:" in capsys.readouterr().out.lower()


def test_cli_gen_is_deterministic(capsys):
    """Test that gen prints the same scene file twice."""
    assert main(["gen", "--space", "h4", "--seed", "7", "--count", "2"]) == EXIT_OK
    first = capsys.readouterr().out
    assert main(["gen", "--space", "h4", "--seed", "7", "--count", "2"]) == EXIT_OK
    second = capsys.readouterr().out
    assert first == second
    assert len(json.loads(first)["scenes"]) == 2


def test_cli_gen_then_verify(tmp_path: Path, capsys):
    """Test the gen and verify commands through a file.

    Args:
        tmp_path: Pytest fixture providing temporary directory.
        capsys: Pytest fixture for capturing stdout/stderr.
    """
    scenes = tmp_path / "scenes.json"
    report = tmp_path / "report.json"
    table = tmp_path / "residuals.csv"

    gen = ["gen", "--space", "h3", "--seed", "1", "--count", "2"]
    assert main([*gen, "-o", str(scenes)]) == 0
    assert scenes.exists()
    code = main(["verify", str(scenes), "-o", str(report), "--emit-csv", str(table)])

    assert code == EXIT_OK
    data = json.loads(report.read_text(encoding="utf-8"))
    assert data["pass"] is True
    assert data["count"] == 2
    header = table.read_text(encoding="utf-8").splitlines()[0]
    assert header == "index,space,family,name,residual,pass"
    assert capsys.readouterr().out == ""


def test_cli_verify_from_stdin(monkeypatch, capsys):
    """Test verify reading a scene file from stdin.

    Args:
        monkeypatch: Pytest fixture for replacing sys.stdin.
        capsys: Pytest fixture for capturing stdout/stderr.
    """
    main(["gen", "--space", "triangle-spherical", "--seed", "2", "--count", "3"])
    scene_text = capsys.readouterr().out
    monkeypatch.setattr("sys.stdin", io.StringIO(scene_text))

    assert main(["verify", "--format", "text"]) == EXIT_OK
    assert "triangle-spherical: 3 instance(s)" in capsys.readouterr().out


def test_cli_verify_generated_batch(capsys):
    """Test verify with --space and no scene file."""
    code = main(
        ["verify", "--space", "h4", "--count", "2", "--seed", "3", "--branches", "5"]
    )

    assert code == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["instances"][0]["reports"][0]["branches"] == [1, 0, 1, 0, 0, 0]


def test_cli_verify_failing_scene(tmp_path: Path, capsys):
    """Test that a broken hexagon gives exit code 1.

    Args:
        tmp_path: Pytest fixture providing temporary directory.
        capsys: Pytest fixture for capturing stdout/stderr.
    """
    main(["gen", "--space", "h3", "--seed", "4"])
    data = json.loads(capsys.readouterr().out)
    data["scenes"][0]["sides"][2]["dst"][0] += 0.25
    scenes = tmp_path / "broken.json"
    scenes.write_text(json.dumps(data), encoding="utf-8")

    assert main(["verify", str(scenes)]) == EXIT_FAILED
    assert json.loads(capsys.readouterr().out)["pass"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "--space", "h4", "--count", "0"],
        ["gen", "--space", "h4", "--seed", "-1"],
        ["verify", "--space", "h3", "--tolerance", "0.5"],
        ["verify", "--space", "h3", "--branches", "64"],
        ["euler", "0", "0", "0", "0"],
    ],
)
def test_cli_usage_errors(argv, caplog):
    """Test that out-of-range options give exit code 2.

    Args:
        argv: Command line to run.
        caplog: Pytest fixture for capturing log output.
    """
    assert main(argv) == EXIT_USAGE
    assert caplog.text


def test_cli_missing_scene_file(tmp_path: Path):
    """Test that a missing scene file gives exit code 2.

    Args:
        tmp_path: Pytest fixture providing temporary directory.
    """
    assert main(["verify", str(tmp_path / "missing.json")]) == EXIT_USAGE


def test_cli_malformed_scene_file(tmp_path: Path, caplog):
    """Test that invalid JSON gives exit code 2.

    Args:
        tmp_path: Pytest fixture providing temporary directory.
        caplog: Pytest fixture for capturing log output.
    """
    path = tmp_path / "bad.json"
    path.write_text("{", encoding="utf-8")

    assert main(["verify", str(path)]) == EXIT_USAGE
    assert "Invalid scene file" in caplog.text


def test_cli_tolerance_from_environment(monkeypatch):
    """Test that a bad HEXAGAUSS_TOL is a usage error.

    Args:
        monkeypatch: Pytest fixture for setting environment variables.
    """
    monkeypatch.setenv("HEXAGAUSS_TOL", "lots")
    assert main(["verify", "--space", "h3"]) == EXIT_USAGE


def test_cli_euler_regular(capsys):
    """Test the eight triples of a regular quaternion."""
    assert main(["euler", "0.5", "0.5", "0.5", "0.5"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "8 solutions" in out
    assert len([line for line in out.splitlines() if line.startswith("  ")]) == 8


def test_cli_euler_normalizes_and_reports_family(capsys):
    """Test that a non-unit input along e1 is normalized to a family."""
    assert main(["euler", "3", "4", "0", "0", "--format", "json"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["regular"] is False
    assert data["input"] == "0.6 + 0.8*e1"


def test_batch_options_validation():
    """Test the option ranges of BatchOptions."""
    assert BatchOptions("h3").count == 1
    with pytest.raises(ValueError, match="Unknown space"):
        BatchOptions("h5")
    with pytest.raises(ValueError, match="--count"):
        BatchOptions("h3", count=0)
    with pytest.raises(ValueError, match="--seed"):
        BatchOptions("h3", seed=-1)


def test_run_config_validation():
    """Test the option ranges of RunConfig."""
    config = RunConfig(BatchOptions("h3"))
    assert config.fmt == "json" and config.workers == 1
    with pytest.raises(ValueError, match="--tolerance"):
        RunConfig(tolerance=0.0)
    with pytest.raises(ValueError, match="--branches"):
        RunConfig(branches=64)
    with pytest.raises(ValueError, match="--workers"):
        RunConfig(workers=0)


def test_cmd_verify_uses_config_format(capsys):
    """Test that cmd_verify renders with the configured format."""
    config = RunConfig(BatchOptions("h3", count=2, seed=4), fmt="text")
    assert cmd_verify(config) == EXIT_OK
    assert not capsys.readouterr().out.lstrip().startswith("{")
    with pytest.raises(ValueError, match="Nothing to verify"):
        cmd_verify(RunConfig())


def test_gen_has_no_report_options():
    """Test that gen rejects verify-only options."""
    with pytest.raises(SystemExit) as info:
        main(["gen", "--space", "h3", "--format", "text"])
    assert info.value.code == EXIT_USAGE
