"""Command-line entry point.

Usage::

    simulate --config run.yaml [--figure N] [--out DIR] [--calibrate]

Exit code 0 on success; on failure a single machine-parsable line
``error: <ExceptionName>: <message>`` goes to stderr and the exit code is
nonzero.  Sweep parallelism is capped by the WEAKDELAY_WORKERS environment
variable.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from typing import List, Optional

from .config import RunConfig, load_config, preset
from .errors import WeakDelayError
from .figures import reproduce_figure
from .pipeline import calibrate, run_point, run_sweep
from .report import report_text, sweep_csv


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simulate",
        description="Slow-light differential-group-delay weak-measurement"
                    " simulator")
    parser.add_argument("--config", help="YAML run description")
    parser.add_argument("--figure", type=int, choices=(1, 3, 4, 5, 6, 7),
                        help="reproduce a preset figure dataset")
    parser.add_argument("--out", help="output directory (default from config)")
    parser.add_argument("--calibrate", action="store_true",
                        help="fit the dipole-prefactor scalar so the"
                             " peak-to-peak delay matches 305/gamma at the"
                             " canonical operating point")
    return parser


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    if args.config:
        run = load_config(args.config)
    elif args.figure is not None:
        run = preset(args.figure)
    else:
        raise WeakDelayError("either --config or --figure is required")
    if args.figure is not None:
        run = replace(run, outputs=replace(run.outputs,
                                           figure_id=args.figure))
    if args.out:
        run = replace(run, outputs=replace(run.outputs, directory=args.out))
    return run


def main(argv: Optional[List[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        run = _resolve_config(args)
        if args.calibrate:
            factor = calibrate(run.atomic, run.probe,
                               dipole_mode=run.dipole_mode)
            run = replace(run, calibration=run.calibration * factor)
        outdir = run.outputs.directory
        os.makedirs(outdir, exist_ok=True)
        written: List[str] = []

        if run.outputs.figure_id is not None:
            written.extend(reproduce_figure(run, outdir))
        elif run.sweep is not None:
            rows = run_sweep(run)
            if "csv" in run.outputs.formats:
                path = os.path.join(outdir, "sweep.csv")
                with open(path, "w") as fh:
                    fh.write(sweep_csv(rows))
                written.append(path)
            failed = [row for row in rows if row.report is None]
            for row in failed:
                print(f"warning: sweep point {row.index}"
                      f" ({row.variable}={row.value}): {row.error}",
                      file=sys.stderr)
        else:
            report = run_point(run.atomic, run.probe, run.post_selection,
                               run.dipole_mode, run.calibration)
            if "report" in run.outputs.formats:
                path = os.path.join(outdir, "report.txt")
                with open(path, "w") as fh:
                    fh.write(report_text(report))
                written.append(path)

        for path in written:
            print(path)
        return 0
    except WeakDelayError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: OSError: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
