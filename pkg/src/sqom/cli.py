"""Command-line entry point: run, sweep, preset, validate."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .experiments import SweepGrid, load_config, run, sweep
from .liouvillian import DissipationMode, VariantId
from .presets import PRESET_NAMES, execute_preset, get_preset
from .validate import run_validation


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqom",
        description=(
            "coherence decay of cavity photon superpositions in an "
            "optomechanical system coupled to thermal or squeezed baths"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="integrate one configuration")
    p_run.add_argument("--config", required=True, help="JSON config file")
    p_run.add_argument("--variant", choices=[v.value for v in VariantId],
                       help="override the config's master-equation variant")
    p_run.add_argument("--mode", choices=[m.value for m in DissipationMode],
                       help="override the config's dissipation mode")
    p_run.add_argument("--out", required=True, help="output directory")
    p_run.add_argument("--name", default="run",
                       help="basename for the CSV/manifest pair")

    p_sweep = sub.add_parser("sweep", help="sweep one parameter axis")
    p_sweep.add_argument("--config", required=True, help="JSON config file")
    p_sweep.add_argument("--axis", required=True,
                         choices=["r", "theta", "g0"])
    p_sweep.add_argument("--values", required=True,
                         help="comma-separated ascending values")
    p_sweep.add_argument("--out", required=True, help="output directory")
    p_sweep.add_argument("--name", default="sweep",
                         help="basename for the CSV/manifest pair")

    p_preset = sub.add_parser("preset", help="reproduce a whole figure")
    p_preset.add_argument("name", choices=list(PRESET_NAMES))
    p_preset.add_argument("--out", required=True, help="output directory")

    sub.add_parser("validate", help="run the fast invariant suite")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (ValueError, OSError) as exc:
        # bad config contents or unreadable paths are user errors, not bugs
        print(str(exc), file=sys.stderr)
        return 2


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "run":
        config = load_config(args.config)
        if args.variant:
            config = replace(config, variant=VariantId(args.variant))
        if args.mode:
            config = replace(config, mode=DissipationMode(args.mode))
        manifest = run(config, args.out, name=args.name)
        ct = manifest["coherence_time_kappa_t"]
        ct_text = "not reached" if ct is None else f"{ct:.6g}"
        print(f"wrote {manifest['csv']}; coherence time (kappa t): {ct_text}")
        return 0

    if args.command == "sweep":
        config = load_config(args.config)
        try:
            values = tuple(float(v) for v in args.values.split(","))
        except ValueError:
            print(f"could not parse --values {args.values!r} as numbers",
                  file=sys.stderr)
            return 2
        grid = SweepGrid(axis=args.axis, values=values, base=config)
        manifest = sweep(grid, args.out, name=args.name)
        print(f"wrote {manifest['csv']} ({len(values)} points)")
        return 0

    if args.command == "preset":
        preset = get_preset(args.name)
        manifest = execute_preset(preset, args.out)
        n = len(manifest["components"])
        print(f"wrote {args.name}.json and {n} component file pair(s) "
              f"in {args.out}")
        return 0

    if args.command == "validate":
        failures = run_validation(verbose=True)
        return 1 if failures else 0

    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    raise SystemExit(main())
