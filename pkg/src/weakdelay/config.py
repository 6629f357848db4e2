"""Configuration dataclasses, validation, presets, and YAML ingestion.

All rates, splittings, and detunings in :class:`AtomicConfig` are expressed in
units of the base spontaneous rate ``gamma`` (itself in rad/s).  Lengths are in
cm and densities in cm^-3 (Gaussian units throughout).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from typing import Optional, Sequence, Tuple

import yaml

from .constants import K39_GAMMA, K39_WAVELENGTH
from .errors import ConfigError

SWEEP_VARIABLES = ("G", "beta", "sigma", "N")
DIPOLE_MODES = ("base", "channel")
OUTPUT_FORMATS = ("csv", "report")
FIGURE_IDS = (1, 3, 4, 5, 6, 7)


def _require(condition: bool, name: str, message: str) -> None:
    if not condition:
        raise ConfigError(name, message)


@dataclass(frozen=True)
class AtomicConfig:
    """Four-level medium: decay channels, dephasings, splittings, and drive.

    ``delta0`` is the probe carrier detuning from the sigma- transition; the
    two-photon (probe-minus-control) detuning used by the response functions is
    ``delta0 - Delta - 2*B_prime``.
    """

    gamma: float = K39_GAMMA          # rad/s; the unit of everything below
    gamma_13: float = 1.0
    gamma_14: float = 2.0
    gamma_23: float = 2.0
    gamma_24: float = 1.0
    gamma_coll: float = 0.0
    Gamma_31: Optional[float] = None  # None -> derived from the channel rates
    Gamma_32: Optional[float] = None
    Gamma_41: Optional[float] = None
    Gamma_42: Optional[float] = None
    Gamma_43: Optional[float] = None
    Gamma_21: Optional[float] = None
    B: float = 5.0
    B_prime: Optional[float] = None   # None -> 3*B
    Delta: float = 0.0
    delta0: Optional[float] = None    # None -> Delta (dark resonance carrier)
    G: float = 0.03

    def __post_init__(self) -> None:
        _require(self.gamma > 0, "gamma", "base rate must be positive")
        for name in ("gamma_13", "gamma_14", "gamma_23", "gamma_24",
                     "gamma_coll", "G"):
            _require(getattr(self, name) >= 0, name, "rate must be >= 0")
        for name in ("Gamma_31", "Gamma_32", "Gamma_41", "Gamma_42",
                     "Gamma_43", "Gamma_21"):
            value = getattr(self, name)
            if value is not None:
                _require(value >= 0, name, "dephasing must be >= 0")

    # -- derived dephasings -------------------------------------------------

    def _derived(self, name: str) -> float:
        ground = 0.5 * (self.gamma_13 + self.gamma_23)
        excited = 0.5 * (self.gamma_14 + self.gamma_24)
        table = {
            "Gamma_31": ground,
            "Gamma_32": ground,
            "Gamma_41": excited,
            "Gamma_42": excited,
            "Gamma_43": ground + excited,
            "Gamma_21": 0.0,
        }
        return table[name] + self.gamma_coll

    def dephasing(self, name: str) -> float:
        """Dephasing rate, deriving from channel rates when not overridden."""
        value = getattr(self, name)
        return self._derived(name) if value is None else value

    @property
    def dephasings_overridden(self) -> bool:
        """True when any explicit dephasing departs from the derived value."""
        for name in ("Gamma_31", "Gamma_32", "Gamma_41",
                     "Gamma_42", "Gamma_43", "Gamma_21"):
            value = getattr(self, name)
            if value is not None and not math.isclose(
                    value, self._derived(name), rel_tol=1e-12, abs_tol=1e-12):
                return True
        return False

    @property
    def b_prime(self) -> float:
        return 3.0 * self.B if self.B_prime is None else self.B_prime

    @property
    def carrier_detuning(self) -> float:
        return self.Delta if self.delta0 is None else self.delta0

    @property
    def omega_pc0(self) -> float:
        """Two-photon detuning at the pulse carrier (units of gamma)."""
        return self.carrier_detuning - self.Delta - 2.0 * self.b_prime


@dataclass(frozen=True)
class GridConfig:
    """Uniform frequency grid: transform size and total span in sigma units."""

    n_points: int = 65536
    span_sigma: float = 128.0

    def __post_init__(self) -> None:
        _require(self.n_points >= 4096, "grid.n_points", "need >= 4096 points")
        _require(self.n_points & (self.n_points - 1) == 0,
                 "grid.n_points", "must be a power of two")
        _require(self.span_sigma >= 16.0, "grid.span_sigma",
                 "span must cover at least 16 sigma")


@dataclass(frozen=True)
class ProbeConfig:
    """Gaussian probe pulse, medium geometry, and the simulation grid."""

    lambda0: float = K39_WAVELENGTH     # cm
    sigma: float = 2.0 * math.pi * 791.6  # rad/s spectral half-width
    eps0: float = 1.0                   # amplitude; inert in linear response
    L: float = 1.0                      # cm
    N: float = 1e9                      # cm^-3
    grid: GridConfig = field(default_factory=GridConfig)

    def __post_init__(self) -> None:
        _require(self.lambda0 > 0, "lambda0", "wavelength must be positive")
        _require(self.sigma > 0, "sigma", "spectral width must be positive")
        _require(self.L > 0, "L", "medium length must be positive")
        _require(self.N >= 0, "N", "number density must be >= 0")

    def sigma_gamma(self, gamma: float) -> float:
        """Spectral half-width in units of gamma."""
        return self.sigma / gamma

    def omega0_gamma(self, gamma: float) -> float:
        """Absolute carrier angular frequency in units of gamma."""
        from .constants import C_LIGHT
        return 2.0 * math.pi * C_LIGHT / self.lambda0 / gamma


@dataclass(frozen=True)
class PostSelection:
    """Projection angle of the nearly dark output polarization port."""

    beta: float = 0.1

    def __post_init__(self) -> None:
        _require(math.sin(self.beta) != 0.0, "beta",
                 "sin(beta) must be nonzero for arrival-time inversion")


@dataclass(frozen=True)
class SweepConfig:
    variable: str = "G"
    values: Tuple[float, ...] = ()

    def __post_init__(self) -> None:
        _require(self.variable in SWEEP_VARIABLES, "sweep.variable",
                 f"must be one of {SWEEP_VARIABLES}")
        _require(len(self.values) > 0, "sweep.values", "must be nonempty")
        _require(all(math.isfinite(v) for v in self.values),
                 "sweep.values", "all values must be finite")


@dataclass(frozen=True)
class OutputConfig:
    directory: str = "out"
    formats: Tuple[str, ...] = ("csv", "report")
    figure_id: Optional[int] = None

    def __post_init__(self) -> None:
        for fmt in self.formats:
            _require(fmt in OUTPUT_FORMATS, "outputs.formats",
                     f"unknown format {fmt!r}")
        if self.figure_id is not None:
            _require(self.figure_id in FIGURE_IDS, "outputs.figure_id",
                     f"must be one of {FIGURE_IDS}")


@dataclass(frozen=True)
class RunConfig:
    """Complete description of a single run or sweep."""

    atomic: AtomicConfig = field(default_factory=AtomicConfig)
    probe: ProbeConfig = field(default_factory=ProbeConfig)
    post_selection: PostSelection = field(default_factory=PostSelection)
    sweep: Optional[SweepConfig] = None
    outputs: OutputConfig = field(default_factory=OutputConfig)
    dipole_mode: str = "base"
    calibration: float = 1.0

    def __post_init__(self) -> None:
        _require(self.dipole_mode in DIPOLE_MODES, "dipole_mode",
                 f"must be one of {DIPOLE_MODES}")
        _require(self.calibration > 0, "calibration", "must be positive")


# ---------------------------------------------------------------------------
# Figure presets
# ---------------------------------------------------------------------------

def _linspace(a: float, b: float, n: int) -> Tuple[float, ...]:
    return tuple(a + (b - a) * i / (n - 1) for i in range(n))


def preset(figure_id: int) -> RunConfig:
    """Canonical parameter block for a reproduced figure."""
    base = RunConfig(outputs=OutputConfig(figure_id=figure_id))
    if figure_id in (1, 6):
        return base
    if figure_id in (3, 4):
        sweep = SweepConfig(variable="G", values=_linspace(0.03, 0.3, 28))
        return replace(base, sweep=sweep)
    if figure_id == 5:
        sweep = SweepConfig(variable="G", values=_linspace(0.1, 0.3, 50))
        return replace(base, sweep=sweep)
    if figure_id == 7:
        sweep = SweepConfig(variable="G", values=_linspace(0.3, 0.9, 50))
        probe = replace(base.probe, sigma=2.0 * math.pi * 7916.0)
        return replace(base, sweep=sweep, probe=probe)
    raise ConfigError("figure_id", f"no preset for figure {figure_id}")


# Beta values plotted together in the arrival-time-vs-drive figure.
FIG3_BETAS = (0.1, 0.2, 0.3, 0.4)


# ---------------------------------------------------------------------------
# YAML ingestion
# ---------------------------------------------------------------------------

def _build(cls, data: dict, context: str):
    allowed = {f.name for f in fields(cls)}
    for key in data:
        if key not in allowed:
            raise ConfigError(f"{context}.{key}", "unknown key")
    return cls(**data)


def load_config(path: str) -> RunConfig:
    """Parse and fully validate a declarative YAML run description.

    A top-level ``preset: figN`` key seeds the figure parameter block; any
    other keys then override it.  Unknown keys are rejected at every level.
    """
    try:
        with open(path) as fh:
            raw = yaml.safe_load(fh)
    except yaml.YAMLError as exc:
        raise ConfigError("file", f"YAML parse failure: {exc}") from exc
    if raw is None:
        raise ConfigError(
            "file",
            "empty config; required sections: atomic, probe, post_selection"
            " (or a 'preset' key)")
    if not isinstance(raw, dict):
        raise ConfigError("file", "top level must be a mapping")

    base = RunConfig()
    if "preset" in raw:
        name = str(raw.pop("preset"))
        if not (name.startswith("fig") and name[3:].isdigit()
                and int(name[3:]) in FIGURE_IDS):
            raise ConfigError("preset", f"unknown preset {name!r}")
        base = preset(int(name[3:]))

    known = {"atomic", "probe", "post_selection", "sweep", "outputs",
             "dipole_mode", "calibration"}
    for key in raw:
        if key not in known:
            raise ConfigError(key, "unknown key")

    kwargs = {}
    if "atomic" in raw:
        kwargs["atomic"] = _build(AtomicConfig, dict(raw["atomic"]), "atomic")
    if "probe" in raw:
        probe_raw = dict(raw["probe"])
        if "grid" in probe_raw:
            probe_raw["grid"] = _build(GridConfig, dict(probe_raw["grid"]),
                                       "probe.grid")
        kwargs["probe"] = _build(ProbeConfig, probe_raw, "probe")
    if "post_selection" in raw:
        kwargs["post_selection"] = _build(
            PostSelection, dict(raw["post_selection"]), "post_selection")
    if "sweep" in raw:
        sweep_raw = dict(raw["sweep"])
        if "values" in sweep_raw:
            sweep_raw["values"] = tuple(float(v) for v in sweep_raw["values"])
        kwargs["sweep"] = _build(SweepConfig, sweep_raw, "sweep")
    if "outputs" in raw:
        out_raw = dict(raw["outputs"])
        if "formats" in out_raw:
            out_raw["formats"] = tuple(out_raw["formats"])
        kwargs["outputs"] = _build(OutputConfig, out_raw, "outputs")
    if "dipole_mode" in raw:
        kwargs["dipole_mode"] = str(raw["dipole_mode"])
    if "calibration" in raw:
        kwargs["calibration"] = float(raw["calibration"])

    try:
        return replace(base, **kwargs)
    except TypeError as exc:  # pragma: no cover - defensive
        raise ConfigError("file", str(exc)) from exc
