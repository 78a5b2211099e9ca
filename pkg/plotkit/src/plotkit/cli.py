"""Command-line entry point: plot one figure from a data directory."""

from __future__ import annotations

import argparse
import sys

from .render import render
from .spec import ParseError, build_figure_spec


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="render one figure from simulator CSV/manifest output",
    )
    parser.add_argument("figure_id",
                        help="figure name, e.g. fig1 or fig3a; the data "
                             "directory must contain <figure_id>.json")
    parser.add_argument("--in", dest="in_dir", required=True,
                        help="directory holding the figure's CSVs/manifests")
    parser.add_argument("--out", required=True,
                        help="output image path (.svg recommended)")
    args = parser.parse_args(argv)

    try:
        spec = build_figure_spec(args.figure_id, args.in_dir)
        written = render(spec, args.out)
    except ParseError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    print(f"wrote {written}")
    return 0


def main_entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    main_entry()
