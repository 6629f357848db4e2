"""Figure-data reproduction: CSV series plus rendered PNGs.

Each reproduced figure emits the x/y series underlying the plot as CSV and a
matplotlib rendering of the same data alongside it.
"""

from __future__ import annotations

import os
from dataclasses import replace
from typing import Dict, List

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .atomic import susceptibility_curve
from .config import FIG3_BETAS, PostSelection, RunConfig
from .errors import WeakDelayError
from .measurement import output_intensity, postselect_mirror
from .pipeline import run_point, run_sweep
from .pulse import (frequency_grid, gaussian_spectrum, input_envelope,
                    propagate)
from .report import provenance_header, sweep_csv, xy_csv


def _envelopes(run: RunConfig):
    cfg, probe = run.atomic, run.probe
    offsets = frequency_grid(cfg, probe)
    curve = susceptibility_curve(cfg, probe, offsets, run.dipole_mode,
                                 run.calibration)
    spectrum = gaussian_spectrum(cfg, probe, offsets)
    e_plus, e_minus = propagate(cfg, probe, curve, spectrum)
    e_in = input_envelope(cfg, probe, offsets)
    return e_in, e_plus, e_minus


def _window(times: np.ndarray, sigma_t: float) -> np.ndarray:
    """Indices covering the interesting time range, decimated to <= 4001."""
    mask = (times >= -4.0 * sigma_t) & (times <= 8.0 * sigma_t)
    idx = np.nonzero(mask)[0]
    stride = max(1, idx.size // 4000)
    return idx[::stride]


def _save(outdir: str, name: str, text: str) -> str:
    path = os.path.join(outdir, name)
    with open(path, "w") as fh:
        fh.write(text)
    return path


def _header(run: RunConfig) -> List[str]:
    report = run_point(run.atomic, run.probe, run.post_selection,
                       run.dipole_mode, run.calibration)
    return provenance_header(report)


def _figure_envelopes(run: RunConfig, outdir: str, name: str,
                      normalized_output: bool) -> List[str]:
    cfg, probe = run.atomic, run.probe
    e_in, e_plus, e_minus = _envelopes(run)
    sigma_t = 2.0 / probe.sigma_gamma(cfg.gamma)
    idx = _window(e_in.times, sigma_t)
    tau = e_in.times[idx]
    peak_in = float(np.max(np.abs(e_in.values) ** 2))
    columns: Dict[str, np.ndarray] = {"tau_gamma": tau}

    if normalized_output:
        e_out = postselect_mirror(e_plus, e_minus, run.post_selection)
        intensity = output_intensity(e_out)
        columns["input_norm"] = np.abs(e_in.values[idx]) ** 2 / peak_in
        columns["output_norm"] = intensity[idx] / float(np.max(intensity))
        labels = [("input_norm", "input (normalized)"),
                  ("output_norm", "post-selected output (normalized)")]
        ylabel = "normalized intensity"
    else:
        columns["input_abs2"] = np.abs(e_in.values[idx]) ** 2 / peak_in
        columns["plus_abs2"] = 2.0 * np.abs(e_plus.values[idx]) ** 2 / peak_in
        columns["minus_abs2"] = 2.0 * np.abs(e_minus.values[idx]) ** 2 \
            / peak_in
        labels = [("input_abs2", "input"),
                  ("plus_abs2", "sigma+ output"),
                  ("minus_abs2", "sigma- output")]
        ylabel = "intensity / input peak"

    csv_path = _save(outdir, f"{name}.csv",
                     xy_csv(columns, _header(run)))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for key, label in labels:
        ax.plot(columns["tau_gamma"], columns[key], label=label)
    ax.set_xlabel(r"$\gamma\tau$")
    ax.set_ylabel(ylabel)
    ax.legend()
    fig.tight_layout()
    png_path = os.path.join(outdir, f"{name}.png")
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def _sweep_series(run: RunConfig):
    rows = run_sweep(run)
    good = [r for r in rows if r.report is not None]
    if not good:
        raise WeakDelayError("every sweep point failed")
    return rows, good


def _figure_arrival_vs_drive(run: RunConfig, outdir: str,
                             name: str) -> List[str]:
    columns: Dict[str, np.ndarray] = {}
    header: List[str] = []
    for beta in FIG3_BETAS:
        beta_run = replace(run, post_selection=PostSelection(beta=beta))
        rows, good = _sweep_series(beta_run)
        if not header:
            header = provenance_header(good[0].report)
            columns["G"] = np.array([r.value for r in good])
        columns[f"mean_arrival_beta_{beta}"] = np.array(
            [r.report.mean_arrival for r in good])
    csv_path = _save(outdir, f"{name}.csv", xy_csv(columns, header))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for beta in FIG3_BETAS:
        ax.plot(columns["G"], columns[f"mean_arrival_beta_{beta}"],
                label=rf"$\beta = {beta}$")
    ax.set_xlabel(r"$G/\gamma$")
    ax.set_ylabel(r"$\gamma\,\langle t\rangle$")
    ax.legend()
    fig.tight_layout()
    png_path = os.path.join(outdir, f"{name}.png")
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, png_path]


def _figure_dgd_vs_drive(run: RunConfig, outdir: str, name: str) -> List[str]:
    rows, good = _sweep_series(run)
    columns = {
        "G": np.array([r.value for r in good]),
        "gamma_dgd_measured": np.array([r.report.dgd_measured for r in good]),
        "gamma_dgd_analytic": np.array([r.report.dgd_analytic for r in good]),
    }
    header = provenance_header(good[0].report)
    csv_path = _save(outdir, f"{name}.csv", xy_csv(columns, header))
    sweep_path = _save(outdir, f"{name}_rows.csv", sweep_csv(rows))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(columns["G"], columns["gamma_dgd_measured"],
            label="peak-to-peak")
    ax.plot(columns["G"], columns["gamma_dgd_analytic"], "--",
            label="group-index")
    ax.set_xlabel(r"$G/\gamma$")
    ax.set_ylabel(r"$\gamma\,\delta\tau$")
    ax.legend()
    fig.tight_layout()
    png_path = os.path.join(outdir, f"{name}.png")
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, sweep_path, png_path]


def _figure_arrival_vs_dgd(run: RunConfig, outdir: str,
                           name: str) -> List[str]:
    rows, good = _sweep_series(run)
    dgd = np.array([r.report.dgd_measured for r in good])
    mean_t = np.array([r.report.mean_arrival for r in good])
    slope = float(np.polyfit(dgd, mean_t, 1)[0])
    columns = {
        "gamma_dgd_measured": dgd,
        "mean_arrival": mean_t,
        "two_mean_arrival": 2.0 * mean_t,
    }
    header = provenance_header(good[0].report)
    header.append(f"# regression slope mean_arrival vs dgd = {slope!r}")
    csv_path = _save(outdir, f"{name}.csv", xy_csv(columns, header))
    sweep_path = _save(outdir, f"{name}_rows.csv", sweep_csv(rows))
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(dgd, mean_t, "o", ms=3, label="sweep points")
    ax.plot(dgd, slope * dgd + np.polyfit(dgd, mean_t, 1)[1], "-",
            label=f"fit, slope {slope:.3f}")
    ax.set_xlabel(r"$\gamma\,\delta\tau$")
    ax.set_ylabel(r"$\gamma\,\langle t\rangle$")
    ax.legend()
    fig.tight_layout()
    png_path = os.path.join(outdir, f"{name}.png")
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    return [csv_path, sweep_path, png_path]


def reproduce_figure(run: RunConfig, outdir: str) -> List[str]:
    """Emit the CSV data and PNG rendering for the configured figure id."""
    figure_id = run.outputs.figure_id
    os.makedirs(outdir, exist_ok=True)
    if figure_id == 1:
        return _figure_envelopes(run, outdir, "fig1", normalized_output=False)
    if figure_id == 3:
        return _figure_arrival_vs_drive(run, outdir, "fig3")
    if figure_id == 4:
        return _figure_dgd_vs_drive(run, outdir, "fig4")
    if figure_id == 5:
        return _figure_arrival_vs_dgd(run, outdir, "fig5")
    if figure_id == 6:
        return _figure_envelopes(run, outdir, "fig6", normalized_output=True)
    if figure_id == 7:
        return _figure_arrival_vs_dgd(run, outdir, "fig7")
    raise WeakDelayError(f"unknown figure id {figure_id!r}")
