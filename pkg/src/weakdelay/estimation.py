"""Number-density inference from delay, and the absorption-route error model."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .config import AtomicConfig, ProbeConfig
from .atomic import analytic_dgd, probe_coherences
from .errors import ZeroKappaError


@dataclass(frozen=True)
class DensityEstimate:
    """Inferred density and the linear delay-density coefficient used."""

    N_hat: float          # cm^-3
    kappa: float          # delay (1/gamma units) per unit density (cm^3)
    method: str           # "weak-measurement" or "absorption"
    rel_error_model: Optional[float] = None  # |dN/N| for the absorption route


def delay_per_density(cfg: AtomicConfig, probe: ProbeConfig,
                      N_ref: float = 1e9, dipole_mode: str = "base",
                      calibration: float = 1.0,
                      route: str = "measured") -> float:
    """kappa = dgd(N_ref)/N_ref at the operating point.

    ``route="measured"`` (default) references the full propagate-and-time
    pipeline, so densities inferred from measured delays round-trip;
    ``route="analytic"`` uses the group-index difference instead.
    """
    probe_ref = replace(probe, N=N_ref)
    if route == "analytic":
        dgd_ref = analytic_dgd(cfg, probe_ref, dipole_mode, calibration)
    elif route == "measured":
        from .pipeline import measured_dgd_at
        dgd_ref = measured_dgd_at(cfg, probe_ref, dipole_mode, calibration)
    else:
        raise ValueError(f"unknown route {route!r}")
    kappa = dgd_ref / N_ref
    if kappa <= 0.0:
        raise ZeroKappaError(
            "medium is non-dispersive at this operating point")
    return kappa


def estimate_density(dgd: float, cfg: AtomicConfig, probe: ProbeConfig,
                     N_ref: float = 1e9, dipole_mode: str = "base",
                     calibration: float = 1.0,
                     route: str = "measured") -> DensityEstimate:
    """Invert the linear delay-density relation: N_hat = dgd / kappa."""
    kappa = delay_per_density(cfg, probe, N_ref, dipole_mode, calibration,
                              route)
    return DensityEstimate(N_hat=dgd / kappa, kappa=kappa,
                           method="weak-measurement")


def absorption_coefficient(cfg: AtomicConfig, probe: ProbeConfig,
                           component: str = "-") -> float:
    """Per-atom absorption coefficient alpha at the pulse carrier.

    alpha = (3 L lambda^2 / 2 pi) Im[rho_tilde] with rho_tilde the
    first-order coherence of the chosen circular component, so the
    transmitted intensity fraction is xi = exp(-alpha N).
    """
    coh = probe_coherences(cfg, cfg.omega_pc0)
    rho = coh.rho41_minus if component == "-" else coh.rho32_plus
    return 3.0 * probe.L * probe.lambda0 ** 2 / (2.0 * np.pi) * rho.imag


def absorption_error(xi: float, d_xi: float, alpha: float,
                     N: float) -> float:
    """Relative density error |dN/N| of the transmission (absorption) method.

    From xi = exp(-alpha N): |dN/N| = |d_xi / xi| / (N alpha).
    """
    if not (0.0 < xi <= 1.0):
        raise ValueError("xi must lie in (0, 1]")
    if N <= 0.0 or alpha <= 0.0:
        raise ValueError("N and alpha must be positive")
    return abs(d_xi / xi) / (N * alpha)
