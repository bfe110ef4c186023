"""
Tests for the command-line interface
"""
import json
import runpy
import sys

import numpy as np
import pytest

from ckm.cli import ENV_OUTPUT_DIR, EXIT_FAILURE, EXIT_INVALID, EXIT_SUCCESS, main, run
from ckm.io import FIGURE_KINDS, TRAJECTORY_COLUMNS, Updater

from .utils import scenario_path


@pytest.fixture
def output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv(ENV_OUTPUT_DIR, str(tmp_path))
    return tmp_path


def write_scenario(tmp_path, text):
    file_path = tmp_path / "scenario.yaml"
    file_path.write_text(text)
    return str(file_path)


def test_classify(output_dir, capsys):
    assert main(["classify", scenario_path("oip_x_i")]) == EXIT_SUCCESS
    out = capsys.readouterr().out
    assert "region: PMinus" in out
    assert "r_c: 6464000 m" in out


def test_classify_reference(output_dir, capsys):
    assert main(["classify", scenario_path("oip_x1")]) == EXIT_SUCCESS
    out = capsys.readouterr().out
    assert "region: PMinus" in out
    assert "reference: " in out


def test_classify_nearly_colinear(tmp_path, output_dir, capsys):
    file_path = write_scenario(tmp_path, "problem: propagate\nstate:\n  cartesian:\n    r: \"[7000, 0, 0] km\"\n    v: \"[100, 1e-11, 0] m/s\"\n")
    assert run("classify", file_path) == EXIT_SUCCESS
    out = capsys.readouterr().out
    assert "region: Colinear" in out
    assert "r_p: " not in out


def test_propagate_writes_periodic_trajectory(output_dir, capsys):
    status = main(["propagate", scenario_path("circular_leo"), "--figure", "r_and_rp_vs_time", "--log-format", "none"])
    assert status == EXIT_SUCCESS
    assert "terminal reason: TimeExhausted" in capsys.readouterr().out

    columns, table = Updater(name="tests").load_csv(str(output_dir / "circular_leo_propagate.csv"))
    assert columns == TRAJECTORY_COLUMNS
    np.testing.assert_allclose(table[-1, 1:4], table[0, 1:4], atol=1.0)
    np.testing.assert_equal(table[:, 7], 100.0)

    columns, figure = Updater(name="tests").load_csv(str(output_dir / "circular_leo_propagate_r_and_rp_vs_time.csv"))
    assert columns == FIGURE_KINDS["r_and_rp_vs_time"]
    np.testing.assert_equal(figure.shape, (len(table), 4))
    np.testing.assert_allclose(figure[:, 3], 6.464e6)


def test_output_dir_priority(tmp_path, monkeypatch):
    monkeypatch.setenv(ENV_OUTPUT_DIR, str(tmp_path / "env"))
    assert run("elements", scenario_path("oip_x_i"), {"output_dir": str(tmp_path / "flag")}) == EXIT_SUCCESS
    assert (tmp_path / "env" / "oip_x_i_elements.jsonl").exists()
    assert not (tmp_path / "flag").exists()

    monkeypatch.delenv(ENV_OUTPUT_DIR)
    assert run("elements", scenario_path("oip_x_i"), {"output_dir": str(tmp_path / "flag")}) == EXIT_SUCCESS
    with open(tmp_path / "flag" / "oip_x_i_elements.jsonl") as file:
        record = json.loads(file.readline())
    assert sorted(record["meoe"].keys()) == ["P", "ex", "ey", "hx", "hy", "l"]


def test_spiral(output_dir, capsys):
    assert run("spiral", scenario_path("spiral_x_i")) == EXIT_SUCCESS
    out = capsys.readouterr().out
    assert "duration: " in out
    assert "tau_bar: " in out
    _, table = Updater(name="tests").load_csv(str(output_dir / "spiral_x_i_spiral.csv"))
    np.testing.assert_equal(table.shape, (201, 15))
    assert table[-1, 11] > 6.464e6


def test_path(output_dir):
    assert run("path", scenario_path("path_p_plus")) == EXIT_SUCCESS
    columns, table = Updater(name="tests").load_csv(str(output_dir / "path_p_plus_path.csv"))
    assert columns[0] == "lambda"
    np.testing.assert_equal(table.shape, (101, 15))
    assert np.all(table[:, 11] > 6.464e6)


def test_invalid_scenario(tmp_path, output_dir, capsys):
    file_path = write_scenario(tmp_path, "problem: OIP\nstate:\n  scalars:\n    altitude: 110 km\n    speed: 7879.5 m/s\n    flight_path_angle: 5 deg\nspeed: 1\n")
    assert run("classify", file_path) == EXIT_INVALID
    err = capsys.readouterr().err
    assert "error: " in err
    assert "speed" in err


def test_missing_file(tmp_path, output_dir):
    assert run("classify", str(tmp_path / "missing.yaml")) == EXIT_INVALID


def test_missing_field_for_command(output_dir, capsys):
    assert run("path", scenario_path("oip_x_i")) == EXIT_INVALID
    assert "terminal_state" in capsys.readouterr().err


def test_solver_failure(tmp_path, output_dir, capsys):
    # spiral from the stable region
    file_path = write_scenario(tmp_path, "problem: spiral\ninitial_mass: 100 kg\nstate:\n  scalars:\n    altitude: 400 km\n    speed: 7670.9 m/s\n    flight_path_angle: 0 deg\n")
    assert run("spiral", file_path) == EXIT_FAILURE
    assert "failure: NotInPMinus" in capsys.readouterr().err


def test_unknown_command():
    with pytest.raises(SystemExit):
        main(["launch", scenario_path("oip_x_i")])


@pytest.mark.slow
def test_ocp(output_dir, capsys):
    assert main(["ocp", scenario_path("oip_x_i"), "--tau", "20", "--figure", "planar_trajectory"]) == EXIT_SUCCESS
    with open(output_dir / "oip_x_i_ocp.jsonl") as file:
        record = json.loads(file.readline())
    assert record["kind"] == "OIP"
    assert record["s"] > 0.0
    assert (output_dir / "oip_x_i_ocp_planar_trajectory.csv").exists()


def test_module_entry_point(output_dir, monkeypatch, capsys):
    monkeypatch.setattr(sys, "argv", ["ckm", "classify", scenario_path("oip_x_i"), "--log-format", "none"])
    with pytest.raises(SystemExit) as error:
        runpy.run_module("ckm", run_name="__main__")
    assert error.value.code == EXIT_SUCCESS
    assert "region: PMinus" in capsys.readouterr().out
