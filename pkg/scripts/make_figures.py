#!/usr/bin/env python3
"""Reproduce the decay studies end to end.

Executes every figure preset (or the named subset) into
artifacts/figures/data/<preset>/ and, when the plotting package is installed,
renders each one to artifacts/figures/<preset>.svg. The data step alone takes
roughly half an hour serially; pass preset names to regenerate selectively.

Usage:
    python3 scripts/make_figures.py [preset ...] [--skip-render]
"""

from __future__ import annotations

import argparse
import subprocess
import sys
import time
from pathlib import Path

from sqom.presets import PRESET_NAMES, execute_preset, get_preset

ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = ROOT / "artifacts" / "figures" / "data"
FIG_DIR = ROOT / "artifacts" / "figures"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("presets", nargs="*", metavar="preset",
                        help=f"presets to run (default: all of {', '.join(PRESET_NAMES)})")
    parser.add_argument("--skip-render", action="store_true",
                        help="produce CSVs and manifests only")
    args = parser.parse_args(argv)
    unknown = [p for p in args.presets if p not in PRESET_NAMES]
    if unknown:
        parser.error(f"unknown preset(s): {', '.join(unknown)}")
    names = args.presets or list(PRESET_NAMES)

    for name in names:
        out = DATA_DIR / name
        t0 = time.perf_counter()
        execute_preset(get_preset(name), out)
        print(f"{name}: data written to {out.relative_to(ROOT)} "
              f"({time.perf_counter() - t0:.0f}s)", flush=True)

    if args.skip_render:
        return 0
    try:
        import plotkit  # noqa: F401
    except ImportError:
        print("plotkit is not installed; skipping rendering "
              "(pip install -e plotkit)", file=sys.stderr)
        return 0
    for name in names:
        target = FIG_DIR / f"{name}.svg"
        code = subprocess.call([
            sys.executable, "-m", "plotkit", name,
            "--in", str(DATA_DIR / name), "--out", str(target),
        ])
        if code != 0:
            print(f"rendering {name} failed with exit code {code}",
                  file=sys.stderr)
            return code
        print(f"{name}: rendered {target.relative_to(ROOT)}", flush=True)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
