"""Publication-style rendering of the coherence-decay figure data.

This package consumes only the files the simulator's CLI writes: per-figure
manifests, trajectory CSVs (`kappa_t,P_pq,...`) and sweep CSVs
(`axis,value,coherence_time_kappa_t,...`). It never recomputes physics, so
the simulator's test suite does not depend on it.
"""

from .spec import FigureSpec, ParseError, build_figure_spec
from .render import render

__all__ = ["FigureSpec", "ParseError", "build_figure_spec", "render"]
