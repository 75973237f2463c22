"""Command-line behavior: exit codes, outputs, seed and directory handling."""

import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from reelsim.cli import main


@pytest.fixture
def scenario_file(scenario_payload, write_scenario):
    return write_scenario(scenario_payload)


def test_validate_ok(scenario_file, capsys):
    assert main(["validate", str(scenario_file)]) == 0
    out = capsys.readouterr().out
    assert "scenario OK: 3 agents (minor, major, middle)" in out
    assert "seed 11" in out


def test_validate_missing_file(tmp_path, capsys):
    assert main(["validate", str(tmp_path / "nope.json")]) == 1
    assert "cannot read" in capsys.readouterr().err


def test_validate_malformed_json(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{oops")
    assert main(["validate", str(path)]) == 1
    assert "malformed scenario file" in capsys.readouterr().err


def test_validate_bad_params(scenario_payload, write_scenario, capsys):
    scenario_payload["params"]["beta"] = 0.9
    path = write_scenario(scenario_payload, "bad.json")
    assert main(["validate", str(path)]) == 1
    assert "params: benevolence multiplier" in capsys.readouterr().err


def test_step_writes_trajectory(scenario_file, tmp_path, capsys):
    out_dir = tmp_path / "out"
    assert main(["--out-dir", str(out_dir), "step", str(scenario_file), "--t", "1"]) == 0
    assert f"wrote {out_dir / 'sizes.csv'}" in capsys.readouterr().out
    rows = list(csv.reader((out_dir / "sizes.csv").open()))
    assert rows[0] == ["minor", "major", "middle"]
    assert [float(cell) for cell in rows[1]] == [0.3, 1.0, 0.6]
    stepped = np.array([float(cell) for cell in rows[2]])
    assert np.max(np.abs(stepped - np.array([0.33, 0.71, 0.792]))) <= 1e-12


def test_step_zero_steps_keeps_initial_row(scenario_file, tmp_path):
    out_dir = tmp_path / "out"
    assert main(["--out-dir", str(out_dir), "step", str(scenario_file), "--t", "0"]) == 0
    rows = list(csv.reader((out_dir / "sizes.csv").open()))
    assert len(rows) == 2


def test_step_negative_steps_is_runtime_failure(scenario_file, tmp_path, capsys):
    out_dir = tmp_path / "out"
    code = main(["--out-dir", str(out_dir), "step", str(scenario_file), "--t", "-3"])
    assert code == 2
    assert "--t must be nonnegative" in capsys.readouterr().err


def test_frame_writes_distribution(scenario_file, tmp_path, capsys):
    out_dir = tmp_path / "out"
    assert main(["--out-dir", str(out_dir), "frame", str(scenario_file)]) == 0
    out = capsys.readouterr().out
    assert "lines retained" in out
    doc = json.loads((out_dir / "frames.json").read_text())
    assert doc["agents"] == ["minor", "major", "middle"]
    assert doc["diagnostics"]["lines_generated"] == 60
    assert sum(frame["probability"] for frame in doc["frames"]) == pytest.approx(1.0, abs=1e-9)
    assert (out_dir / "state.dot").read_text().startswith("digraph state {")


def test_reels_writes_tree_and_table(scenario_file, tmp_path, capsys):
    out_dir = tmp_path / "out"
    assert main(["--out-dir", str(out_dir), "reels", str(scenario_file)]) == 0
    out = capsys.readouterr().out
    assert "reels; most probable has probability" in out
    doc = json.loads((out_dir / "tree.json").read_text())
    assert doc["tree"]["depth"] == 0
    assert len(doc["reels"]) >= 1
    assert (out_dir / "tree.dot").read_text().startswith("digraph reels {")
    rows = list(csv.reader((out_dir / "reels.csv").open()))
    assert rows[0][:4] == ["rank", "probability", "steps", "leaf_reason"]
    assert len(rows) == len(doc["reels"]) + 1


def test_reels_runs_are_reproducible(scenario_file, tmp_path):
    dirs = [tmp_path / "a", tmp_path / "b"]
    for out_dir in dirs:
        assert main(["--out-dir", str(out_dir), "reels", str(scenario_file)]) == 0
    for name in ("tree.json", "tree.dot", "reels.csv"):
        assert (dirs[0] / name).read_bytes() == (dirs[1] / name).read_bytes()


def test_seed_flag_overrides_scenario(scenario_file, tmp_path):
    base = tmp_path / "base"
    reseeded = tmp_path / "reseeded"
    assert main(["--out-dir", str(base), "frame", str(scenario_file)]) == 0
    assert main(["--seed", "99", "--out-dir", str(reseeded), "frame", str(scenario_file)]) == 0
    assert (base / "frames.json").read_text() != (reseeded / "frames.json").read_text()
    repeat = tmp_path / "repeat"
    assert main(["--seed", "99", "--out-dir", str(repeat), "frame", str(scenario_file)]) == 0
    assert (repeat / "frames.json").read_text() == (reseeded / "frames.json").read_text()


def test_out_dir_env_var(scenario_file, tmp_path, monkeypatch):
    target = tmp_path / "from-env"
    monkeypatch.setenv("REELSIM_OUT_DIR", str(target))
    assert main(["step", str(scenario_file), "--t", "1"]) == 0
    assert (target / "sizes.csv").exists()


def test_out_dir_flag_beats_env(scenario_file, tmp_path, monkeypatch):
    monkeypatch.setenv("REELSIM_OUT_DIR", str(tmp_path / "env"))
    flagged = tmp_path / "flag"
    assert main(["--out-dir", str(flagged), "step", str(scenario_file), "--t", "1"]) == 0
    assert (flagged / "sizes.csv").exists()
    assert not (tmp_path / "env").exists()


def test_default_out_dir_is_cwd(scenario_file, tmp_path, monkeypatch):
    monkeypatch.delenv("REELSIM_OUT_DIR", raising=False)
    monkeypatch.chdir(tmp_path)
    assert main(["step", str(scenario_file), "--t", "1"]) == 0
    assert (tmp_path / "sizes.csv").exists()


def test_threads_flag_is_validated(scenario_file):
    with pytest.raises(SystemExit) as excinfo:
        main(["--threads", "0", "frame", str(scenario_file)])
    assert excinfo.value.code == 2


def test_threaded_run_matches_serial(scenario_file, tmp_path):
    serial = tmp_path / "serial"
    threaded = tmp_path / "threaded"
    assert main(["--out-dir", str(serial), "frame", str(scenario_file)]) == 0
    assert main(["--threads", "3", "--out-dir", str(threaded), "frame", str(scenario_file)]) == 0
    assert (serial / "frames.json").read_bytes() == (threaded / "frames.json").read_bytes()


def test_unknown_subcommand_is_usage_error(scenario_file):
    with pytest.raises(SystemExit) as excinfo:
        main(["explode", str(scenario_file)])
    assert excinfo.value.code == 2


def test_missing_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        main([])
    assert excinfo.value.code == 2


def test_console_script_entry_point(scenario_file):
    result = subprocess.run(
        [sys.executable, "-m", "reelsim.cli", "validate", str(scenario_file)],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert "scenario OK" in result.stdout
