#!/usr/bin/env python3
"""Refinement check for the figure presets.

Re-runs each preset configuration at an enlarged truncation (two extra cavity
levels, mechanical dimension scaled by 1.5) and reports the shift of the
tracked coherence. Decay-curve presets are judged on the worst pointwise
shift of the curve, as a fraction of its initial value, because the curve is
what they emit. Sweeps emit only crossing times, so their probes (taken at
the extreme axis values) are judged on the relative crossing-time shift
instead; the curve deviation is still printed for reference. Exits nonzero
if any configuration shifts by more than 1% on its own metric.

Usage:
    python3 scripts/check_convergence.py [preset ...] [--samples N]
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import replace

from sqom.evolution import convergence_check
from sqom.experiments import apply_axis
from sqom.presets import PRESET_NAMES, get_preset


def probe_targets(preset):
    """Yield (label, config, metric) triples covering the demanding corners."""
    for label, config in preset.runs:
        yield label, config, "curve"
    for label, grid in preset.sweeps:
        for value in (grid.values[0], grid.values[-1]):
            yield (f"{label}[{grid.axis}={value:g}]",
                   apply_axis(grid.base, grid.axis, value), "crossing")


def probe_metric(report: dict, metric: str) -> tuple[float, bool]:
    """Return (deviation, flagged) for the metric a target is judged on."""
    if metric == "crossing":
        shift = report["coherence_time_rel_shift"]
        # no crossing in either run: fall back to the curve metric
        if shift is not None:
            return shift, shift > 0.01
    return report["max_rel_deviation"], report["flagged"]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("presets", nargs="*", metavar="preset",
                        help=f"presets to probe (default: all of {', '.join(PRESET_NAMES)})")
    parser.add_argument("--samples", type=int, default=60,
                        help="sample count per probe run (default 60)")
    args = parser.parse_args(argv)
    unknown = [p for p in args.presets if p not in PRESET_NAMES]
    if unknown:
        parser.error(f"unknown preset(s): {', '.join(unknown)}")
    names = args.presets or list(PRESET_NAMES)

    any_flagged = False
    print(f"{'configuration':34s} {'base':>9s} {'refined':>9s} "
          f"{'curve dev':>11s} {'ct shift':>10s} {'time':>7s}", flush=True)
    for name in names:
        preset = get_preset(name)
        for label, config, metric in probe_targets(preset):
            probe = replace(config, samples=args.samples)
            t0 = time.perf_counter()
            report = convergence_check(probe)
            dt = time.perf_counter() - t0
            base = report["baseline_space"]
            ref = report["refined_space"]
            deviation, flagged = probe_metric(report, metric)
            ct_shift = report["coherence_time_rel_shift"]
            ct_text = f"{ct_shift:10.3e}" if ct_shift is not None else f"{'n/a':>10s}"
            mark = "  FLAGGED" if flagged else ""
            print(f"{name + ':' + label:34s} "
                  f"({base['dim_cavity']},{base['dim_mech']:3d}) "
                  f"({ref['dim_cavity']},{ref['dim_mech']:3d}) "
                  f"{report['max_rel_deviation']:11.3e} {ct_text} "
                  f"{dt:6.1f}s{mark}",
                  flush=True)
            any_flagged = any_flagged or flagged
    if any_flagged:
        print("some configurations are not converged at their preset "
              "truncation", file=sys.stderr)
        return 1
    print("all probed configurations converged (shift <= 1%)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
