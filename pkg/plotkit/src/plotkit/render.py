"""Deterministic figure drawing.

Rendering is a pure function of the referenced files: fixed style, fixed
color cycle, no timestamps, and an SVG hash salt derived from the figure id,
so rerunning on identical inputs reproduces the output byte for byte.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .spec import (  # noqa: E402
    AXIS_LABELS,
    FigureSpec,
    read_sweep_csv,
    read_trajectory_csv,
)

# a compact colorblind-safe cycle; fixed here so upstream style changes
# cannot alter the output
_COLORS = ("#0072b2", "#d55e00", "#009e73", "#cc79a7", "#56b4e9", "#e69f00")
_THRESHOLD = 0.1


def _style(figure_id: str) -> dict:
    return {
        "figure.figsize": (6.4, 4.2),
        "figure.dpi": 120,
        "font.size": 10,
        "axes.grid": True,
        "grid.alpha": 0.3,
        "svg.hashsalt": figure_id,
        "axes.prop_cycle": plt.cycler(color=_COLORS),
        "svg.fonttype": "path",
    }


def _wrap_title(text: str, width: int = 72) -> str:
    words = text.split()
    lines, current = [], ""
    for word in words:
        trial = f"{current} {word}".strip()
        if len(trial) > width and current:
            lines.append(current)
            current = word
        else:
            current = trial
    lines.append(current)
    return "\n".join(lines)


def _render_trajectories(ax, spec: FigureSpec) -> None:
    for comp in spec.components:
        times, values = read_trajectory_csv(comp.csv)
        ax.plot(times, values, label=comp.legend, linewidth=1.6)
    ax.axhline(_THRESHOLD, color="0.4", linestyle="--", linewidth=0.9,
               label="threshold 0.1")
    ax.set_xlabel(r"$\kappa t$")
    ax.set_ylabel(r"$P_{pq}$")
    ax.set_ylim(bottom=0.0)


def _render_sweeps(ax, spec: FigureSpec) -> None:
    for comp in spec.components:
        values, times = read_sweep_csv(comp.csv)
        kept = [(v, t) for v, t in zip(values, times) if t is not None]
        if kept:
            xs, ys = zip(*kept)
            ax.plot(xs, ys, marker="o", markersize=4, linewidth=1.4,
                    label=comp.legend)
        missing = [v for v, t in zip(values, times) if t is None]
        for v in missing:
            ax.axvline(v, color="0.75", linestyle=":", linewidth=0.8)
    axis = spec.sweep_axis or "value"
    ax.set_xlabel(AXIS_LABELS.get(axis, axis))
    ax.set_ylabel(r"coherence time ($\kappa t$ at $P_{pq} = 0.1$)")
    ax.set_ylim(bottom=0.0)
    if axis == "theta":
        ticks = [0.0, math.pi / 2, math.pi, 3 * math.pi / 2, 2 * math.pi]
        ax.set_xticks(ticks)
        ax.set_xticklabels(
            ["0", r"$\pi/2$", r"$\pi$", r"$3\pi/2$", r"$2\pi$"])


def _timestamp_suppression(out_path: Path) -> dict | None:
    # SVG and PDF embed a creation date unless told otherwise; PNG does not
    suffix = out_path.suffix.lower()
    if suffix == ".svg":
        return {"Date": None}
    if suffix == ".pdf":
        return {"CreationDate": None}
    return None


def render(spec: FigureSpec, out_path: str | Path) -> Path:
    """Draw the figure and write it to out_path (suffix picks the format)."""
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with plt.rc_context(_style(spec.figure_id)):
        fig, ax = plt.subplots()
        try:
            if spec.kind == "trajectory":
                _render_trajectories(ax, spec)
            else:
                _render_sweeps(ax, spec)
            ax.set_title(_wrap_title(spec.title), fontsize=9)
            ax.legend(fontsize=8, framealpha=0.9)
            fig.tight_layout()
            metadata = _timestamp_suppression(out_path)
            if metadata is None:
                fig.savefig(out_path)
            else:
                fig.savefig(out_path, metadata=metadata)
        finally:
            plt.close(fig)
    return out_path
