"""Spectral-domain pulse construction, propagation, and peak timing.

Time is measured as tau = t - L/c in units of 1/gamma; the common vacuum
transit is absorbed into the time origin.  Frequencies are offsets from the
optical carrier in units of gamma.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import AtomicConfig, ProbeConfig
from .constants import C_LIGHT
from .atomic import SusceptibilityCurve
from .errors import AliasingError, BoundaryPeakError, GridMismatchError


@dataclass(frozen=True)
class FieldEnvelope:
    """Complex time-domain envelope of one circular component."""

    times: np.ndarray       # uniform, units of 1/gamma
    values: np.ndarray      # complex samples
    component: str          # "+", "-", "in", or "out"

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0])

    def energy(self) -> float:
        """Integral of |E|^2 over the window (trapezoidal)."""
        return float(np.trapezoid(np.abs(self.values) ** 2, self.times))


def frequency_grid(cfg: AtomicConfig, probe: ProbeConfig) -> np.ndarray:
    """Symmetric carrier-offset grid (units of gamma) from the grid settings."""
    n = probe.grid.n_points
    span = probe.grid.span_sigma * probe.sigma_gamma(cfg.gamma)
    d_omega = span / n
    return (np.arange(n) - n // 2) * d_omega


def gaussian_spectrum(cfg: AtomicConfig, probe: ProbeConfig,
                      omega_offsets: np.ndarray) -> np.ndarray:
    """Total-field Gaussian spectral amplitude on the offset grid.

    Peak value eps0/(sigma sqrt(pi)); each circular component carries
    1/sqrt(2) of this amplitude.
    """
    sigma_g = probe.sigma_gamma(cfg.gamma)
    return (probe.eps0 / (sigma_g * np.sqrt(np.pi))
            * np.exp(-omega_offsets ** 2 / sigma_g ** 2))


def _inverse_transform(spectrum: np.ndarray, d_omega: float) -> np.ndarray:
    """E(tau_k) = sum_j S_j exp(-i omega_j tau_k) d_omega on centered grids.

    With omega_j = (j - n/2) d_omega and tau_k = (k - n/2) dt, dt d_omega =
    2 pi / n, the double shift reduces to an FFT with alternating-sign phase
    factors on both sides.
    """
    n = spectrum.size
    j = np.arange(n)
    a = spectrum * np.exp(1j * np.pi * j)
    field = np.fft.fft(a) * d_omega
    return field * np.exp(1j * np.pi * j) * np.exp(-1j * np.pi * n / 2)


def _time_grid(n: int, d_omega: float) -> np.ndarray:
    dt = 2.0 * np.pi / (n * d_omega)
    return (np.arange(n) - n // 2) * dt


def _check_aliasing(env: FieldEnvelope) -> None:
    """Reject windows that truncate more than 1e-6 of the pulse energy."""
    intensity = np.abs(env.values) ** 2
    total = float(np.trapezoid(intensity, env.times))
    if total == 0.0:
        return
    n = env.times.size
    edge = max(1, int(0.05 * n))
    tail = (float(np.trapezoid(intensity[:edge], env.times[:edge]))
            + float(np.trapezoid(intensity[-edge:], env.times[-edge:])))
    if tail > 1e-6 * total:
        raise AliasingError(
            f"{tail/total:.2e} of the pulse energy lies within 5% of the"
            " time-window edges; enlarge grid.span_sigma or n_points")


def propagate(cfg: AtomicConfig, probe: ProbeConfig,
              curve: SusceptibilityCurve,
              spectrum: np.ndarray) -> tuple:
    """Propagate both circular components through the medium.

    ``spectrum`` is the total-field spectral amplitude on the curve's offset
    grid; each component takes amplitude spectrum/sqrt(2) and acquires the
    dispersive phase 2 pi i (omega0 + omega) (L/c) chi(omega).  Returns
    (FieldEnvelope sigma+, FieldEnvelope sigma-).
    """
    offsets = curve.omega_offsets
    if spectrum.shape != offsets.shape:
        raise GridMismatchError("spectrum and susceptibility grids differ")
    n = offsets.size
    d_omega = float(offsets[1] - offsets[0])
    times = _time_grid(n, d_omega)
    omega_abs = probe.omega0_gamma(cfg.gamma) + offsets
    transit = cfg.gamma * probe.L / C_LIGHT   # L/c in 1/gamma units
    split = spectrum / np.sqrt(2.0)
    envelopes = []
    for label, chi in (("+", curve.chi_plus), ("-", curve.chi_minus)):
        phase = 2j * np.pi * omega_abs * transit * chi
        values = _inverse_transform(split * np.exp(phase), d_omega)
        env = FieldEnvelope(times=times, values=values, component=label)
        _check_aliasing(env)
        envelopes.append(env)
    return envelopes[0], envelopes[1]


def input_envelope(cfg: AtomicConfig, probe: ProbeConfig,
                   omega_offsets: np.ndarray) -> FieldEnvelope:
    """Time-domain total input envelope (both components combined)."""
    spectrum = gaussian_spectrum(cfg, probe, omega_offsets)
    n = omega_offsets.size
    d_omega = float(omega_offsets[1] - omega_offsets[0])
    values = _inverse_transform(spectrum, d_omega)
    return FieldEnvelope(times=_time_grid(n, d_omega), values=values,
                         component="in")


def peak_time(env: FieldEnvelope) -> float:
    """Abscissa of the maximum of |E|^2, quadratically refined.

    Ties between two adjacent equal maxima resolve to their midpoint; a
    maximum on the first or last sample raises :class:`BoundaryPeakError`.
    """
    intensity = np.abs(env.values) ** 2
    k = int(np.argmax(intensity))
    if k == 0 or k == intensity.size - 1:
        raise BoundaryPeakError("intensity maximum sits on the window edge")
    dt = env.dt
    if intensity[k + 1] == intensity[k]:
        return float(env.times[k]) + 0.5 * dt
    a, b, c = intensity[k - 1], intensity[k], intensity[k + 1]
    denom = a - 2.0 * b + c
    if denom == 0.0:
        return float(env.times[k])
    return float(env.times[k]) + 0.5 * (a - c) / denom * dt


def measured_dgd(e_plus: FieldEnvelope, e_minus: FieldEnvelope) -> float:
    """Peak-to-peak delay of sigma- behind sigma+, in 1/gamma units."""
    return peak_time(e_minus) - peak_time(e_plus)
