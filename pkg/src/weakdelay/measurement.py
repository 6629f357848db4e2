"""Polarization pre-/post-selection and arrival-time estimators.

The input pulse is linearly polarized, i.e. prepared in (|+> + |->)/sqrt(2)
of the circular basis.  The output is projected onto a nearly orthogonal
linear state parameterized by the angle beta; the intensity-weighted arrival
time of the surviving light amplifies the small differential group delay by
~cot(beta)/2.
"""

from __future__ import annotations

import math

import numpy as np

from .config import PostSelection
from .errors import (DegenerateConfigError, GridMismatchError,
                     NoSolutionError, VanishingIntensityError)
from .pulse import FieldEnvelope


def postselect(e_plus: FieldEnvelope, e_minus: FieldEnvelope,
               ps: PostSelection) -> FieldEnvelope:
    """Project onto cos(pi/4 - beta)|+> - sin(pi/4 - beta)|->."""
    if (e_plus.times.shape != e_minus.times.shape
            or not np.array_equal(e_plus.times, e_minus.times)):
        raise GridMismatchError("envelopes sampled on different time grids")
    theta = np.pi / 4.0 - ps.beta
    values = np.cos(theta) * e_plus.values - np.sin(theta) * e_minus.values
    return FieldEnvelope(times=e_plus.times, values=values, component="out")


def postselect_mirror(e_plus: FieldEnvelope, e_minus: FieldEnvelope,
                      ps: PostSelection) -> FieldEnvelope:
    """Project onto the mirrored dark port sin(pi/4-beta)|+> - cos(pi/4-beta)|->.

    Equivalent to :func:`postselect` at -beta up to a global sign.  This is
    the orientation in which the slow, absorbed sigma- component dominates the
    dark port and the arrival-time shift is positive (late); used for all
    figure reproduction.
    """
    if (e_plus.times.shape != e_minus.times.shape
            or not np.array_equal(e_plus.times, e_minus.times)):
        raise GridMismatchError("envelopes sampled on different time grids")
    theta = np.pi / 4.0 - ps.beta
    values = np.sin(theta) * e_plus.values - np.cos(theta) * e_minus.values
    return FieldEnvelope(times=e_plus.times, values=values, component="out")


def output_intensity(e_out: FieldEnvelope) -> np.ndarray:
    """|E_out(t)|^2 time series."""
    return np.abs(e_out.values) ** 2


def intensity_terms(e_plus: FieldEnvelope, e_minus: FieldEnvelope,
                    ps: PostSelection) -> tuple:
    """The three-term expansion of the post-selected intensity.

    Returns (sigma+ term, sigma- term, interference term); their sum equals
    ``output_intensity(postselect(...))`` identically.  The interference term
    carries the weak-value physics for overlapping pulses.
    """
    theta = np.pi / 4.0 - ps.beta
    c, s = np.cos(theta), np.sin(theta)
    term_p = c ** 2 * np.abs(e_plus.values) ** 2
    term_m = s ** 2 * np.abs(e_minus.values) ** 2
    cross = -2.0 * c * s * np.real(e_plus.values
                                   * np.conj(e_minus.values))
    return term_p, term_m, cross


def mean_arrival(times: np.ndarray, intensity: np.ndarray,
                 reference_energy: float = None) -> float:
    """Intensity-weighted centroid <t> by trapezoidal quadrature.

    Raises :class:`VanishingIntensityError` when the retained energy is below
    1e-12 of ``reference_energy`` (or absolutely tiny when no reference is
    given): the estimator is undefined at near-perfect extinction.
    """
    total = float(np.trapezoid(intensity, times))
    floor = 1e-12 * reference_energy if reference_energy else 1e-300
    if total <= floor:
        raise VanishingIntensityError(
            "post-selected energy below threshold; arrival time undefined")
    return float(np.trapezoid(times * intensity, times)) / total


def pointer_shift(e_plus: FieldEnvelope, e_minus: FieldEnvelope,
                  e_out: FieldEnvelope) -> float:
    """Post-selected arrival time relative to the unselected output centroid.

    Subtracting the centroid of |E+|^2 + |E-|^2 isolates the shift produced
    by the projection itself from the ordinary (unamplified) group delay.
    """
    baseline = np.abs(e_plus.values) ** 2 + np.abs(e_minus.values) ** 2
    ref_energy = float(np.trapezoid(baseline, e_out.times))
    selected = mean_arrival(e_out.times, output_intensity(e_out), ref_energy)
    unselected = mean_arrival(e_out.times, baseline)
    return selected - unselected


def weak_value(ps: PostSelection, phi: float) -> float:
    """Re W = cot(beta) / (cos^2(phi/2) + cot^2(beta) sin^2(phi/2))."""
    cot = 1.0 / math.tan(ps.beta)
    denom = math.cos(phi / 2.0) ** 2 + cot ** 2 * math.sin(phi / 2.0) ** 2
    if denom == 0.0:
        raise DegenerateConfigError(
            "weak value undefined: beta -> 0 with sin(phi/2) -> 0")
    return cot / denom


def weak_value_absorptive(ps: PostSelection, phi: float, eta: float) -> float:
    """Re W including differential absorption, parameterized by eta >= 0.

    ``eta`` is the surviving sigma-/sigma+ amplitude ratio; eta = 1 recovers
    :func:`weak_value`, eta -> 0 gives +1 (only sigma+ survives) and
    eta -> inf gives -1.
    """
    if eta < 0:
        raise ValueError("eta must be >= 0")
    if math.isinf(eta):
        return -1.0
    # Medium output state (1, eta e^{i phi}) in the circular basis projected
    # onto cos(pi/4-beta)|+> - sin(pi/4-beta)|->, with the +/-1 circular-basis
    # observable sandwiched between them.
    c = math.cos(math.pi / 4.0 - ps.beta)
    s = math.sin(math.pi / 4.0 - ps.beta)
    b = eta * complex(math.cos(phi), math.sin(phi))
    overlap = c - s * b
    if abs(overlap) == 0.0:
        raise DegenerateConfigError("post-selected amplitude vanishes")
    w = (c + s * b) / overlap
    return float(w.real)


def infer_dgd(mean_t: float, ps: PostSelection, mode: str = "linear",
              phi: float = None) -> float:
    """Invert the arrival-time relation for the delay delta-tau.

    ``linear`` mode applies delta-tau = 2 <t> tan(beta), valid while the
    carrier phase difference is negligible.  ``phase_aware`` solves
    <t> = (delta-tau/2) Re W(beta, phi) for delta-tau by bisection on the
    monotone branch nearest zero, with phi held fixed.
    """
    if mode == "linear":
        return 2.0 * mean_t * math.tan(ps.beta)
    if mode != "phase_aware":
        raise ValueError(f"unknown mode {mode!r}")
    if phi is None:
        raise ValueError("phase_aware mode requires phi")
    w = weak_value(ps, phi)
    if w == 0.0:
        raise NoSolutionError("weak value vanishes; relation not invertible")
    target = 2.0 * mean_t / w
    # With phi fixed the relation is exactly linear in delta-tau; keep the
    # bisection scaffold so a delay-dependent phi model can drop in.
    lo, hi = (0.0, 2.0 * abs(target) + 1.0)
    sign = 1.0 if target >= 0 else -1.0
    func = lambda d: d - abs(target)
    if func(lo) * func(hi) > 0:
        raise NoSolutionError("bisection bracket failed")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if func(mid) <= 0:
            lo = mid
        else:
            hi = mid
    return sign * 0.5 * (lo + hi)


def amplitude_ratio(e_plus: FieldEnvelope, e_minus: FieldEnvelope,
                    definition: str = "energy") -> float:
    """eta = sigma-/sigma+ amplitude ratio.

    ``energy`` (default) compares sqrt of pulse energies, robust to
    reshaping; ``peak`` compares peak |E| values.
    """
    if definition == "energy":
        num, den = e_minus.energy(), e_plus.energy()
    elif definition == "peak":
        num = float(np.max(np.abs(e_minus.values))) ** 2
        den = float(np.max(np.abs(e_plus.values))) ** 2
    else:
        raise ValueError(f"unknown definition {definition!r}")
    if den == 0.0:
        raise VanishingIntensityError("sigma+ component carries no energy")
    return math.sqrt(num / den)
