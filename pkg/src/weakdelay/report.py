"""Deterministic CSV and key-value report emission.

Floats print with ``repr`` (shortest round-trip decimal), headers carry the
full parameter provenance behind ``#`` prefixes, and nothing time- or
machine-dependent is written, so identical configs yield byte-identical
files.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence

import numpy as np

from .pipeline import MeasurementReport, SweepRow
from .pulse import FieldEnvelope

REPORT_COLUMNS = (
    "mean_arrival", "dgd_analytic", "dgd_measured", "dgd_inferred",
    "weak_value_re", "eta", "energy_fraction", "phase_phi",
    "calibration", "dipole_mode",
    "dgd_below_resolution", "arrival_above_resolution",
)


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (complex, np.complexfloating)):
        return repr(complex(value))
    if isinstance(value, np.integer):
        return str(int(value))
    return str(value)


def provenance_header(report: MeasurementReport) -> List[str]:
    """Comment block echoing every input, unit conventions, and calibration."""
    lines = ["# units: rates/frequencies in gamma, time in 1/gamma,"
             " length cm, density cm^-3",
             f"# calibration = {_fmt(report.calibration)}",
             f"# dipole_mode = {report.dipole_mode}"]
    for key in sorted(report.config_echo):
        lines.append(f"# {key} = {_fmt(report.config_echo[key])}")
    return lines


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    """One CSV row per sweep value, with per-row errors in an error column."""
    lines: List[str] = []
    for row in rows:
        if row.report is not None:
            lines.extend(provenance_header(row.report))
            break
    header = ["index", "variable", "value", *REPORT_COLUMNS, "error"]
    lines.append(",".join(header))
    for row in rows:
        cells = [str(row.index), row.variable, _fmt(row.value)]
        if row.report is None:
            cells.extend([""] * len(REPORT_COLUMNS))
        else:
            flat = row.report.flat()
            cells.extend(_fmt(flat[c]) for c in REPORT_COLUMNS)
        cells.append(row.error)
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def report_text(report: MeasurementReport) -> str:
    """Flat ``key = value`` rendering of a single MeasurementReport."""
    lines = provenance_header(report)
    for key, value in report.flat().items():
        if key.startswith("config."):
            continue
        lines.append(f"{key} = {_fmt(value)}")
    return "\n".join(lines) + "\n"


def envelope_csv(envelopes: Iterable[FieldEnvelope],
                 header_lines: Sequence[str] = ()) -> str:
    """Envelope export: tau_gamma plus (re, im, abs2) per component."""
    envelopes = list(envelopes)
    lines = list(header_lines)
    columns = ["tau_gamma"]
    for env in envelopes:
        columns.extend([f"re_{env.component}", f"im_{env.component}",
                        f"abs2_{env.component}"])
    lines.append(",".join(columns))
    times = envelopes[0].times
    for env in envelopes[1:]:
        if not np.array_equal(env.times, times):
            raise ValueError("envelopes must share one time grid")
    for k in range(times.size):
        cells = [repr(float(times[k]))]
        for env in envelopes:
            val = env.values[k]
            cells.extend([repr(float(val.real)), repr(float(val.imag)),
                          repr(float(abs(val) ** 2))])
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def xy_csv(columns: dict, header_lines: Sequence[str] = ()) -> str:
    """Generic column-oriented CSV (figure sweep series)."""
    lines = list(header_lines)
    names = list(columns)
    lines.append(",".join(names))
    length = len(next(iter(columns.values())))
    for k in range(length):
        lines.append(",".join(_fmt(float(columns[name][k]))
                              for name in names))
    return "\n".join(lines) + "\n"
