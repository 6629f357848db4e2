"""End-to-end runs: propagate, post-select, time, invert, and aggregate.

A *point* is one (medium, probe, beta) operating configuration; a *sweep*
varies one of G, beta, sigma, or N across a list of values and collects one
report row per value.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace
from typing import Dict, List, Optional

import numpy as np

from .atomic import analytic_dgd, susceptibility_curve
from .config import AtomicConfig, PostSelection, ProbeConfig, RunConfig
from .constants import C_LIGHT
from .errors import WeakDelayError
from .measurement import (amplitude_ratio, infer_dgd, output_intensity,
                          pointer_shift, postselect_mirror, weak_value)
from .pulse import (frequency_grid, gaussian_spectrum, input_envelope,
                    measured_dgd, propagate)


@dataclass(frozen=True)
class MeasurementReport:
    """Every per-run observable plus full input provenance."""

    mean_arrival: float        # <t> relative to the unselected centroid (1/gamma)
    dgd_analytic: float        # group-index route (1/gamma)
    dgd_measured: float        # peak-to-peak route (1/gamma)
    dgd_inferred: float        # 2 <t> tan(beta) inversion (1/gamma)
    weak_value_re: float
    eta: float                 # sigma-/sigma+ surviving amplitude ratio
    energy_fraction: float     # post-selected / input pulse energy
    phase_phi: float           # carrier phase difference, radians mod 2 pi
    calibration: float
    dipole_mode: str
    dgd_below_resolution: bool
    arrival_above_resolution: bool
    config_echo: Dict[str, object]

    def flat(self) -> Dict[str, object]:
        """Key-value view with the provenance flattened for serialization."""
        out = {k: v for k, v in asdict(self).items() if k != "config_echo"}
        for key, value in self.config_echo.items():
            out[f"config.{key}"] = value
        return out


def _echo(cfg: AtomicConfig, probe: ProbeConfig,
          ps: PostSelection) -> Dict[str, object]:
    echo: Dict[str, object] = {}
    for prefix, obj in (("atomic", cfg), ("probe", probe), ("post", ps)):
        for key, value in asdict(obj).items():
            echo[f"{prefix}.{key}"] = value
    echo["atomic.dephasings_overridden"] = cfg.dephasings_overridden
    return echo


def run_point(cfg: AtomicConfig, probe: ProbeConfig, ps: PostSelection,
              dipole_mode: str = "base", calibration: float = 1.0,
              detector_resolution: Optional[float] = None
              ) -> MeasurementReport:
    """Full single-configuration pipeline producing a MeasurementReport.

    The mean arrival time is the pointer shift of the mirrored dark port:
    the centroid of the post-selected intensity minus the centroid of the
    unselected output, so it isolates the projection-induced amplification.
    """
    offsets = frequency_grid(cfg, probe)
    curve = susceptibility_curve(cfg, probe, offsets, dipole_mode,
                                 calibration)
    spectrum = gaussian_spectrum(cfg, probe, offsets)
    e_plus, e_minus = propagate(cfg, probe, curve, spectrum)

    dgd_meas = measured_dgd(e_plus, e_minus)
    dgd_ana = analytic_dgd(cfg, probe, dipole_mode, calibration)

    e_out = postselect_mirror(e_plus, e_minus, ps)
    mean_t = pointer_shift(e_plus, e_minus, e_out)
    dgd_inf = infer_dgd(mean_t, ps, mode="linear")
    eta = amplitude_ratio(e_plus, e_minus)

    omega0_g = probe.omega0_gamma(cfg.gamma)
    transit = cfg.gamma * probe.L / C_LIGHT
    i0 = offsets.size // 2
    phi = float(2.0 * np.pi * omega0_g * transit
                * (curve.chi_plus[i0].real - curve.chi_minus[i0].real))
    phi = float(np.mod(phi, 2.0 * np.pi))

    e_in = input_envelope(cfg, probe, offsets)
    out_energy = float(np.trapezoid(output_intensity(e_out), e_out.times))
    fraction = out_energy / e_in.energy()

    res = detector_resolution
    return MeasurementReport(
        mean_arrival=float(mean_t),
        dgd_analytic=float(dgd_ana),
        dgd_measured=float(dgd_meas),
        dgd_inferred=float(dgd_inf),
        weak_value_re=float(weak_value(ps, phi)),
        eta=float(eta),
        energy_fraction=float(fraction),
        phase_phi=phi,
        calibration=calibration,
        dipole_mode=dipole_mode,
        dgd_below_resolution=(res is not None and dgd_meas < res),
        arrival_above_resolution=(res is not None and mean_t > res),
        config_echo=_echo(cfg, probe, ps),
    )


def measured_dgd_at(cfg: AtomicConfig, probe: ProbeConfig,
                    dipole_mode: str = "base",
                    calibration: float = 1.0) -> float:
    """Peak-to-peak delay from a bare propagation (no post-selection)."""
    offsets = frequency_grid(cfg, probe)
    curve = susceptibility_curve(cfg, probe, offsets, dipole_mode,
                                 calibration)
    spectrum = gaussian_spectrum(cfg, probe, offsets)
    e_plus, e_minus = propagate(cfg, probe, curve, spectrum)
    return measured_dgd(e_plus, e_minus)


def calibrate(cfg: AtomicConfig, probe: ProbeConfig,
              target_dgd: float = 305.0, dipole_mode: str = "base",
              tol: float = 1e-6, max_iter: int = 12) -> float:
    """Single scalar on both dipole prefactors matching the measured delay.

    Secant iteration on the calibration factor until the peak-to-peak delay
    equals ``target_dgd`` (1/gamma units) to within ``tol``.
    """
    k0 = 1.0
    f0 = measured_dgd_at(cfg, probe, dipole_mode, k0) - target_dgd
    if abs(f0) < tol:
        return k0
    k1 = k0 * target_dgd / (f0 + target_dgd)
    for _ in range(max_iter):
        f1 = measured_dgd_at(cfg, probe, dipole_mode, k1) - target_dgd
        if abs(f1) < tol:
            return float(k1)
        if f1 == f0:
            break
        k0, k1, f0 = k1, k1 - f1 * (k1 - k0) / (f1 - f0), f1
    return float(k1)


@dataclass(frozen=True)
class SweepRow:
    """One sweep point: the varied value plus its report or error."""

    index: int
    variable: str
    value: float
    report: Optional[MeasurementReport]
    error: str = ""


def _apply_sweep_value(run: RunConfig, variable: str,
                       value: float) -> RunConfig:
    if variable == "G":
        return replace(run, atomic=replace(run.atomic, G=value))
    if variable == "beta":
        return replace(run, post_selection=PostSelection(beta=value))
    if variable == "sigma":
        return replace(run, probe=replace(run.probe, sigma=value))
    if variable == "N":
        return replace(run, probe=replace(run.probe, N=value))
    raise ValueError(f"unknown sweep variable {variable!r}")


def _workers() -> int:
    env = os.environ.get("WEAKDELAY_WORKERS", "")
    if env.isdigit() and int(env) > 0:
        return int(env)
    return min(4, os.cpu_count() or 1)


def run_sweep(run: RunConfig,
              detector_resolution: Optional[float] = None) -> List[SweepRow]:
    """Evaluate every sweep value, never aborting on a per-row failure.

    Rows are computed concurrently (capped by the WEAKDELAY_WORKERS
    environment variable) and returned in input order.
    """
    if run.sweep is None:
        sweep_values = [None]
    else:
        sweep_values = list(run.sweep.values)

    def one(item) -> SweepRow:
        index, value = item
        variable = run.sweep.variable if value is not None else ""
        try:
            point = run
            if value is not None:
                point = _apply_sweep_value(run, variable, value)
            report = run_point(point.atomic, point.probe,
                               point.post_selection, point.dipole_mode,
                               point.calibration, detector_resolution)
            return SweepRow(index=index, variable=variable,
                            value=float(value) if value is not None else 0.0,
                            report=report)
        except WeakDelayError as exc:
            return SweepRow(index=index, variable=variable,
                            value=float(value) if value is not None else 0.0,
                            report=None, error=f"{type(exc).__name__}: {exc}")

    items = list(enumerate(sweep_values))
    if len(items) == 1:
        rows = [one(items[0])]
    else:
        with ThreadPoolExecutor(max_workers=_workers()) as pool:
            rows = list(pool.map(one, items))
    return sorted(rows, key=lambda row: row.index)
