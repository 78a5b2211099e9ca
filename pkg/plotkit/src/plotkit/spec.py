"""Figure descriptions assembled from the simulator's manifest files.

A figure manifest (<figure>.json) lists components, each pointing at one CSV
and one run/sweep manifest. Building a FigureSpec checks that everything the
figure references actually exists; parsing the CSV contents happens at render
time, with errors that name the file and line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

TRAJECTORY_HEADER = "kappa_t,P_pq,trace_err,herm_err,min_eig"
SWEEP_HEADER = "axis,value,coherence_time_kappa_t,variant,mode"

AXIS_LABELS = {
    "theta": "bath phase θ",
    "r": "squeeze amplitude r",
    "g0": "coupling g₀ / ωₘ",
}


class ParseError(ValueError):
    """An input file is missing, truncated, or malformed.

    The message always starts with "<path>:<line>:" so the offending spot
    can be found without re-running anything.
    """


@dataclass(frozen=True)
class PlotComponent:
    """One curve: a CSV path plus how to label it."""

    kind: str  # "trajectory" or "sweep"
    label: str
    legend: str
    csv: Path
    axis: str | None = None  # sweep axis name, None for trajectories


@dataclass(frozen=True)
class FigureSpec:
    """Everything needed to draw one figure, with inputs verified present."""

    figure_id: str
    title: str
    components: tuple[PlotComponent, ...]

    @property
    def kind(self) -> str:
        return self.components[0].kind

    @property
    def sweep_axis(self) -> str | None:
        return self.components[0].axis


def _load_manifest(path: Path) -> dict:
    if not path.is_file():
        raise ParseError(f"{path}:0: figure manifest not found")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}: not valid JSON: {exc.msg}") \
            from None
    if not isinstance(data, dict) or "components" not in data:
        raise ParseError(f"{path}:1: missing 'components' list")
    return data


def build_figure_spec(figure_id: str, in_dir: str | Path) -> FigureSpec:
    """Read <in_dir>/<figure_id>.json and resolve every referenced CSV."""
    in_dir = Path(in_dir)
    manifest = _load_manifest(in_dir / f"{figure_id}.json")
    components = []
    for entry in manifest["components"]:
        csv_path = in_dir / entry["csv"]
        if not csv_path.is_file():
            raise ParseError(f"{csv_path}:0: referenced CSV not found")
        components.append(PlotComponent(
            kind=entry["kind"],
            label=entry["label"],
            legend=entry["legend"],
            csv=csv_path,
            axis=entry.get("axis"),
        ))
    if not components:
        raise ParseError(
            f"{in_dir / (figure_id + '.json')}:1: figure has no components")
    kinds = {c.kind for c in components}
    if len(kinds) != 1:
        raise ParseError(
            f"{in_dir / (figure_id + '.json')}:1: mixed component kinds "
            f"{sorted(kinds)} in one figure")
    return FigureSpec(
        figure_id=figure_id,
        title=manifest.get("description", figure_id),
        components=tuple(components),
    )


def _split_line(path: Path, lineno: int, line: str, n_fields: int) -> list[str]:
    fields = line.split(",")
    if len(fields) != n_fields:
        raise ParseError(
            f"{path}:{lineno}: expected {n_fields} comma-separated fields, "
            f"got {len(fields)}")
    return fields


def _parse_float(path: Path, lineno: int, text: str, column: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ParseError(
            f"{path}:{lineno}: column {column!r} is not a number: {text!r}"
        ) from None


def read_trajectory_csv(path: Path) -> tuple[list[float], list[float]]:
    """Return (kappa_t, P_pq) columns, validating the documented header."""
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ParseError(f"{path}:1: file is empty")
    if lines[0] != TRAJECTORY_HEADER:
        raise ParseError(
            f"{path}:1: header is {lines[0]!r}, expected "
            f"{TRAJECTORY_HEADER!r}")
    if len(lines) < 2:
        raise ParseError(f"{path}:2: no data rows after the header")
    times, values = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        fields = _split_line(path, lineno, line, 5)
        times.append(_parse_float(path, lineno, fields[0], "kappa_t"))
        values.append(_parse_float(path, lineno, fields[1], "P_pq"))
    return times, values


def read_sweep_csv(path: Path) -> tuple[list[float], list[float | None]]:
    """Return (value, coherence_time) columns; an empty cell means no
    crossing and comes back as None."""
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines:
        raise ParseError(f"{path}:1: file is empty")
    if lines[0] != SWEEP_HEADER:
        raise ParseError(
            f"{path}:1: header is {lines[0]!r}, expected {SWEEP_HEADER!r}")
    if len(lines) < 2:
        raise ParseError(f"{path}:2: no data rows after the header")
    values, times = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        fields = _split_line(path, lineno, line, 5)
        values.append(_parse_float(path, lineno, fields[1], "value"))
        cell = fields[2]
        if cell == "":
            times.append(None)
        else:
            times.append(_parse_float(
                path, lineno, cell, "coherence_time_kappa_t"))
    return values, times
