import json
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent.parent
DATA_ROOT = REPO_ROOT / "artifacts" / "figures" / "data"

TRAJECTORY_ROWS = """\
kappa_t,P_pq,trace_err,herm_err,min_eig
0,0.5,0,0,0
0.1,0.32,1e-12,1e-13,-1e-14
0.2,0.18,1e-12,1e-13,-1e-14
0.3,0.08,1e-12,1e-13,-1e-14
"""

SWEEP_ROWS = """\
axis,value,coherence_time_kappa_t,variant,mode
theta,0,0.05,dsme_squeezed_hight,preserving
theta,1.571,0.12,dsme_squeezed_hight,preserving
theta,3.142,,dsme_squeezed_hight,preserving
"""


def _write_figure(root, figure_id, components, extra=None):
    manifest = {
        "figure": figure_id,
        "description": f"synthetic {figure_id}",
        "components": components,
        "notes": [],
    }
    if extra:
        manifest.update(extra)
    (root / f"{figure_id}.json").write_text(
        json.dumps(manifest, indent=2), encoding="utf-8")


@pytest.fixture
def trajectory_dir(tmp_path):
    """A minimal one-curve trajectory figure."""
    (tmp_path / "t_run.csv").write_text(TRAJECTORY_ROWS, encoding="utf-8",
                                        newline="\n")
    _write_figure(tmp_path, "tfig", [{
        "kind": "trajectory", "label": "run",
        "legend": "dsme_thermal, n_th=0", "csv": "t_run.csv",
        "manifest": "t_run_manifest.json",
    }])
    return tmp_path


@pytest.fixture
def sweep_dir(tmp_path):
    """A minimal one-curve sweep figure with one non-crossing point."""
    (tmp_path / "s_sweep.csv").write_text(SWEEP_ROWS, encoding="utf-8",
                                          newline="\n")
    _write_figure(tmp_path, "sfig", [{
        "kind": "sweep", "label": "sweep", "axis": "theta",
        "legend": "dsme_squeezed_hight, n_th=20, r=0.5",
        "csv": "s_sweep.csv", "manifest": "s_sweep_manifest.json",
    }])
    return tmp_path
