"""Tests for config ingestion, sweeps, reports, and the CLI surface."""

import os
import subprocess
import sys

import pytest

from weakdelay import (ConfigError, RunConfig, load_config, preset, run_sweep)
from weakdelay.config import GridConfig, SweepConfig
from weakdelay.report import report_text, sweep_csv
from weakdelay.pipeline import run_point


def _write(tmp_path, text):
    path = tmp_path / "run.yaml"
    path.write_text(text)
    return str(path)


def test_load_preset(tmp_path):
    run = load_config(_write(tmp_path, "preset: fig1\n"))
    assert run.outputs.figure_id == 1
    assert run.atomic.G == 0.03
    assert run.atomic.B == 5.0 and run.atomic.b_prime == 15.0
    assert run.probe.N == 1e9 and run.probe.L == 1.0


def test_load_empty_file(tmp_path):
    with pytest.raises(ConfigError) as err:
        load_config(_write(tmp_path, ""))
    assert "atomic" in str(err.value)


def test_load_rejects_negative_gamma(tmp_path):
    with pytest.raises(ConfigError) as err:
        load_config(_write(tmp_path, "atomic:\n  gamma: -1.0\n"))
    assert "gamma" in str(err.value)


def test_load_rejects_unknown_key(tmp_path):
    with pytest.raises(ConfigError) as err:
        load_config(_write(tmp_path, "atomic:\n  flux_capacitance: 1.0\n"))
    assert "flux_capacitance" in str(err.value)


def test_load_overrides_on_preset(tmp_path):
    run = load_config(_write(
        tmp_path,
        "preset: fig1\npost_selection:\n  beta: 0.2\n"
        "probe:\n  grid: {n_points: 8192, span_sigma: 32}\n"))
    assert run.post_selection.beta == 0.2
    assert run.probe.grid.n_points == 8192


def test_grid_validation():
    with pytest.raises(ConfigError):
        GridConfig(n_points=1000)
    with pytest.raises(ConfigError):
        GridConfig(n_points=4096, span_sigma=8)


def test_sweep_validation():
    with pytest.raises(ConfigError):
        SweepConfig(variable="pressure", values=(1.0,))
    with pytest.raises(ConfigError):
        SweepConfig(variable="G", values=())


def test_single_point_sweep_matches_direct(fig1_atomic, fig1_probe, fig1_ps):
    run = RunConfig(sweep=SweepConfig(variable="G", values=(0.03,)))
    rows = run_sweep(run)
    assert len(rows) == 1 and rows[0].error == ""
    direct = run_point(fig1_atomic, fig1_probe, fig1_ps)
    assert rows[0].report.dgd_measured == direct.dgd_measured
    assert rows[0].report.mean_arrival == direct.mean_arrival


def test_sweep_records_row_errors_without_aborting():
    # sigma = 0 is rejected at config construction inside the row
    run = RunConfig(sweep=SweepConfig(variable="N", values=(1e9, -1.0)))
    rows = run_sweep(run)
    assert rows[0].report is not None
    assert rows[1].report is None and "ConfigError" in rows[1].error


def test_sweep_csv_structure(fig1_report):
    run = RunConfig(sweep=SweepConfig(variable="G", values=(0.03, 0.05)))
    text = sweep_csv(run_sweep(run))
    lines = text.strip().splitlines()
    header = [l for l in lines if not l.startswith("#")]
    assert header[0].startswith("index,variable,value,mean_arrival")
    assert len(header) == 3
    assert any(l.startswith("# units:") for l in lines)


def test_report_text_round_trip(fig1_report):
    text = report_text(fig1_report)
    assert "dgd_measured = 305" in text
    assert "# calibration =" in text


def test_cli_report(tmp_path):
    config = tmp_path / "point.yaml"
    config.write_text("preset: fig1\noutputs:\n  directory: out\n"
                      "  figure_id: null\n")
    out = tmp_path / "out"
    proc = subprocess.run(
        [sys.executable, "-m", "weakdelay.cli", "--config", str(config),
         "--out", str(out)],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert (out / "report.txt").exists()


def test_cli_error_is_machine_parsable(tmp_path):
    config = tmp_path / "bad.yaml"
    config.write_text("atomic:\n  gamma: -3\n")
    proc = subprocess.run(
        [sys.executable, "-m", "weakdelay.cli", "--config", str(config)],
        capture_output=True, text=True)
    assert proc.returncode != 0
    assert proc.stderr.startswith("error: ConfigError:")


def test_cli_requires_config_or_figure():
    proc = subprocess.run(
        [sys.executable, "-m", "weakdelay.cli"],
        capture_output=True, text=True)
    assert proc.returncode != 0
    assert proc.stderr.startswith("error:")


def test_figure_presets_complete():
    for figure_id in (1, 3, 4, 5, 6, 7):
        run = preset(figure_id)
        assert run.outputs.figure_id == figure_id
    assert preset(7).probe.sigma == pytest.approx(2 * 3.141592653589793 * 7916)
