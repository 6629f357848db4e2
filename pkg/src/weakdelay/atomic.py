"""Steady state, linear probe response, susceptibilities, and group delay.

The driven four-level medium is solved in closed form: the zeroth-order
(probe-off) density matrix, the first-order probe coherences for each circular
component, the complex susceptibilities chi+-, and the group indices whose
difference sets the differential group delay (DGD).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from .config import AtomicConfig, ProbeConfig
from .constants import C_LIGHT, HBAR
from .errors import (DegenerateConfigError, GridTooCoarseError,
                     SingularDenominatorError)

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class ZerothOrderState:
    """Probe-off steady state of the driven medium."""

    rho11: float
    rho22: float
    rho33: float
    rho44: float
    rho13: complex
    rho24: complex
    x: float
    y: float
    Q: float
    d1: complex
    d2: complex

    @property
    def trace(self) -> float:
        return self.rho11 + self.rho22 + self.rho33 + self.rho44


@dataclass(frozen=True)
class ProbeCoherences:
    """First-order coherences driven by the two probe polarizations."""

    rho41_minus: complex  # responds to the sigma- component
    rho32_plus: complex   # responds to the sigma+ component


@dataclass(frozen=True)
class SusceptibilityCurve:
    """Sampled complex susceptibilities on a uniform carrier-offset grid."""

    omega_offsets: np.ndarray   # units of gamma, strictly increasing
    chi_plus: np.ndarray
    chi_minus: np.ndarray
    prefactor_plus: float
    prefactor_minus: float


def zeroth_order(cfg: AtomicConfig) -> ZerothOrderState:
    """Closed-form probe-off steady state.

    Raises :class:`DegenerateConfigError` when every decay channel vanishes
    and the steady state is undetermined.
    """
    G31 = cfg.dephasing("Gamma_31")
    G42 = cfg.dephasing("Gamma_42")
    if G31 <= 0 or G42 <= 0:
        raise DegenerateConfigError(
            "Gamma_31 and Gamma_42 must be positive for a finite steady state")
    Bp = cfg.b_prime
    d1 = 1j * (cfg.Delta - 2.0 * cfg.B + 2.0 * Bp) - G31
    d2 = 1j * cfg.Delta - G42
    x = 2.0 * G42 / abs(d2) ** 2
    y = 2.0 * G31 / abs(d1) ** 2
    G2 = abs(cfg.G) ** 2
    Q = (cfg.gamma_23 * (cfg.gamma_14 + cfg.gamma_24) * y
         + cfg.gamma_14 * (cfg.gamma_13 + cfg.gamma_23) * x
         + 2.0 * x * y * G2 * (cfg.gamma_14 + cfg.gamma_23))
    if Q == 0.0:
        raise DegenerateConfigError(
            "all decay channels vanish; steady state undefined")
    rho33 = x * y * G2 * cfg.gamma_14 / Q
    rho44 = x * y * G2 * cfg.gamma_23 / Q
    rho11 = x / Q * cfg.gamma_14 * (cfg.gamma_13 + cfg.gamma_23 + y * G2)
    rho22 = y / Q * cfg.gamma_23 * (cfg.gamma_14 + cfg.gamma_24 + x * G2)
    rho13 = (1j * np.conj(cfg.G) / np.conj(d1)
             * x * cfg.gamma_14 / Q * (cfg.gamma_13 + cfg.gamma_23))
    rho24 = (1j * np.conj(cfg.G) / np.conj(d2)
             * y * cfg.gamma_23 / Q * (cfg.gamma_14 + cfg.gamma_24))
    return ZerothOrderState(rho11=rho11, rho22=rho22, rho33=rho33,
                            rho44=rho44, rho13=complex(rho13),
                            rho24=complex(rho24), x=x, y=y, Q=Q,
                            d1=d1, d2=d2)


def _coherence_arrays(cfg: AtomicConfig,
                      omega_pc: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorized first-order coherences over an array of omega_pc values."""
    z = zeroth_order(cfg)
    G32 = cfg.dephasing("Gamma_32")
    G41 = cfg.dephasing("Gamma_41")
    G43 = cfg.dephasing("Gamma_43")
    G21 = cfg.dephasing("Gamma_21")
    Bp = cfg.b_prime
    B = cfg.B
    Delta = cfg.Delta
    G = cfg.G
    G2 = abs(G) ** 2

    p = 1j * (omega_pc + Delta + 2.0 * Bp) - G41
    q = 1j * (omega_pc + 2.0 * Bp) - G21
    r = 1j * (omega_pc + 2.0 * B) - G43
    s = 1j * (omega_pc - Delta + 2.0 * B) - G32
    f = 1j * (omega_pc + Delta - 2.0 * B) - G32
    u = 1j * (omega_pc - 2.0 * Bp) - G21
    v = 1j * (omega_pc - 2.0 * B) - G43
    w = 1j * (omega_pc - Delta - 2.0 * Bp) - G41

    D1 = p * q * r * s + G2 * (p + s) * (q + r)
    D2 = f * u * v * w + G2 * (f + w) * (u + v)
    tiny = np.finfo(float).tiny
    if np.any(np.abs(D1) < 1e3 * tiny) or np.any(np.abs(D2) < 1e3 * tiny):
        raise SingularDenominatorError(
            "probe-response denominator underflow; all dephasings zero at a"
            " resonance crossing")

    A1 = -1j * (q * r * s + (q + r) * G2) * (z.rho11 - z.rho44) / D1
    B1 = r * s * G * z.rho24 / D1
    C1 = q * s * G * z.rho13 / D1
    A2 = -1j * (u * v * w + (v + u) * G2) * (z.rho22 - z.rho33) / D2
    B2 = v * w * G * z.rho13 / D2
    C2 = u * w * G * z.rho24 / D2
    return A1 + B1 + C1, A2 + B2 + C2


def probe_coherences(cfg: AtomicConfig, omega_pc: float) -> ProbeCoherences:
    """First-order response at a single two-photon detuning (gamma units)."""
    minus, plus = _coherence_arrays(cfg, np.asarray(float(omega_pc)))
    return ProbeCoherences(rho41_minus=complex(minus),
                           rho32_plus=complex(plus))


def dipole_prefactors(cfg: AtomicConfig, probe: ProbeConfig,
                      mode: str = "base") -> Tuple[float, float]:
    """Susceptibility prefactors C+- = N |d|^2 / (hbar gamma).

    ``mode="base"`` builds |d|^2 from the base rate gamma for both components;
    ``mode="channel"`` uses the per-channel decay rates (gamma_23 for sigma+,
    gamma_14 for sigma-) instead.
    """
    omega0 = 2.0 * np.pi * C_LIGHT / probe.lambda0
    def pref(rate_scaled: float) -> float:
        d2 = 3.0 * HBAR * C_LIGHT ** 3 * (rate_scaled * cfg.gamma) \
            / (4.0 * omega0 ** 3)
        return probe.N * d2 / (HBAR * cfg.gamma)
    if mode == "channel":
        return pref(cfg.gamma_23), pref(cfg.gamma_14)
    return pref(1.0), pref(1.0)


def susceptibility_curve(cfg: AtomicConfig, probe: ProbeConfig,
                         omega_offsets: np.ndarray,
                         dipole_mode: str = "base",
                         calibration: float = 1.0) -> SusceptibilityCurve:
    """Complex chi+-(omega) on a grid of offsets from the pulse carrier.

    The response functions are evaluated at the two-photon detuning
    ``delta0 + offset - Delta - 2 B'``; ``calibration`` is a single scalar
    multiplying both prefactors (see the calibrated dipole mode).
    """
    omega_offsets = np.asarray(omega_offsets, dtype=float)
    cp, cm = dipole_prefactors(cfg, probe, dipole_mode)
    cp *= calibration
    cm *= calibration
    omega_pc = cfg.omega_pc0 + omega_offsets
    minus, plus = _coherence_arrays(cfg, omega_pc)
    return SusceptibilityCurve(omega_offsets=omega_offsets,
                               chi_plus=cp * plus, chi_minus=cm * minus,
                               prefactor_plus=cp, prefactor_minus=cm)


def _carrier_slope(cfg: AtomicConfig, probe: ProbeConfig, component: str,
                   dipole_mode: str, calibration: float,
                   h: float) -> Tuple[float, float]:
    """(Re chi(0), d Re chi/d omega) by central difference with step h."""
    offsets = np.array([-h, 0.0, h])
    curve = susceptibility_curve(cfg, probe, offsets, dipole_mode, calibration)
    chi = curve.chi_plus if component == "+" else curve.chi_minus
    return chi[1].real, (chi[2].real - chi[0].real) / (2.0 * h)


def group_indices(cfg: AtomicConfig, probe: ProbeConfig,
                  dipole_mode: str = "base",
                  calibration: float = 1.0) -> Tuple[float, float]:
    """Group indices (ng+, ng-) at the pulse carrier.

    Uses a central difference with step h = min(sigma/100, 1e-3) in gamma
    units, cross-checked against the half-step stencil; raises
    :class:`GridTooCoarseError` if the two disagree by more than 0.1%.
    """
    sigma_g = probe.sigma_gamma(cfg.gamma)
    omega0_g = probe.omega0_gamma(cfg.gamma)
    h = min(sigma_g / 100.0, 1e-3)
    out = []
    for component in ("+", "-"):
        re0, d_h = _carrier_slope(cfg, probe, component, dipole_mode,
                                  calibration, h)
        _, d_h2 = _carrier_slope(cfg, probe, component, dipole_mode,
                                 calibration, h / 2.0)
        scale = max(abs(d_h), abs(d_h2), 1e-300)
        if abs(d_h - d_h2) > 1e-3 * scale and scale > 1e-30:
            raise GridTooCoarseError(
                f"carrier derivative of Re chi{component} not converged:"
                f" h-stencil {d_h:.6e} vs h/2-stencil {d_h2:.6e}")
        out.append(1.0 + 2.0 * np.pi * re0 + 2.0 * np.pi * omega0_g * d_h2)
    return out[0], out[1]


def group_velocities(cfg: AtomicConfig, probe: ProbeConfig,
                     dipole_mode: str = "base",
                     calibration: float = 1.0) -> Tuple[float, float]:
    """Group velocities (vg+, vg-) in cm/s."""
    ngp, ngm = group_indices(cfg, probe, dipole_mode, calibration)
    return C_LIGHT / ngp, C_LIGHT / ngm


def analytic_dgd(cfg: AtomicConfig, probe: ProbeConfig,
                 dipole_mode: str = "base",
                 calibration: float = 1.0) -> float:
    """DGD from the group-index difference, in units of 1/gamma."""
    ngp, ngm = group_indices(cfg, probe, dipole_mode, calibration)
    return cfg.gamma * (probe.L / C_LIGHT) * (ngm - ngp)
