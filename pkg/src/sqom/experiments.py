"""Coherence-decay experiments: initial states, observables, runs, sweeps, I/O.

The observable throughout is P_pq(t) = |<p| Tr_mech[ρ(t)] |q>|, the modulus of
one off-diagonal element of the mechanically-traced cavity matrix, and the
derived coherence time: the first κt at which P_pq falls below a threshold.

File contracts (consumed by the plotting package, so they are stable):
  - trajectory CSV: header ``kappa_t,P_pq,trace_err,herm_err,min_eig``,
    12 significant digits, LF line endings;
  - sweep CSV: header ``axis,value,coherence_time_kappa_t,variant,mode``,
    with an empty coherence-time cell when the curve never crosses;
  - run manifest: JSON with the full configuration, assembled rates,
    integrator statistics, and diagnostic extrema.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, replace
from pathlib import Path

import numpy as np

from .evolution import (
    IntegratorMethod,
    IntegratorOptions,
    Trajectory,
    integrate,
)
from .fock import SpaceSpec, as_density_matrix, fock_ket, partial_trace_mech
from .liouvillian import (
    DissipationMode,
    Liouvillian,
    VariantId,
    build_liouvillian,
)
from .model import SystemParams
from .reservoir import ReservoirSpec

SWEEP_AXES = ("r", "theta", "g0")


@dataclass(frozen=True)
class InitialStateSpec:
    """Cavity superposition (cos(ζ/2)|p> + e^{iφ} sin(ζ/2)|q>) ⊗ |u>_mech."""

    zeta_half: float = math.pi / 4
    phi: float = 0.0
    p: int = 0
    q: int = 3
    u: int = 0

    def __post_init__(self) -> None:
        if self.p == self.q:
            raise ValueError("superposed cavity levels p and q must differ")
        if min(self.p, self.q, self.u) < 0:
            raise ValueError("state indices must be >= 0")

    @property
    def initial_coherence(self) -> float:
        """|P_pq(0)| = |cos(ζ/2) sin(ζ/2)|, independent of φ."""
        return abs(math.cos(self.zeta_half) * math.sin(self.zeta_half))


def initial_state(spec: InitialStateSpec, space: SpaceSpec) -> np.ndarray:
    """Density matrix of the pure initial product state."""
    if spec.p >= space.dim_cavity or spec.q >= space.dim_cavity:
        raise ValueError(
            f"cavity levels ({spec.p}, {spec.q}) outside truncation "
            f"0..{space.dim_cavity - 1}"
        )
    if spec.u >= space.dim_mech:
        raise ValueError(
            f"mechanical level {spec.u} outside truncation "
            f"0..{space.dim_mech - 1}"
        )
    cav = (math.cos(spec.zeta_half) * fock_ket(space.dim_cavity, spec.p)
           + complex(math.cos(spec.phi), math.sin(spec.phi))
           * math.sin(spec.zeta_half) * fock_ket(space.dim_cavity, spec.q))
    ket = np.kron(cav, fock_ket(space.dim_mech, spec.u))
    return as_density_matrix(ket)


def coherence(rho: np.ndarray, p: int, q: int, space: SpaceSpec) -> float:
    """|<p| Tr_mech[ρ] |q>| for a full-space density matrix."""
    if not (0 <= p < space.dim_cavity and 0 <= q < space.dim_cavity):
        raise ValueError(
            f"levels ({p}, {q}) outside truncation 0..{space.dim_cavity - 1}"
        )
    return float(abs(partial_trace_mech(rho, space)[p, q]))


def crossing_time(x: np.ndarray, y: np.ndarray, threshold: float) -> float | None:
    """First x at which y falls below threshold, linearly interpolated.

    Returns None when the curve never crosses within the sampled window.
    """
    below = np.nonzero(y < threshold)[0]
    if below.size == 0:
        return None
    i = int(below[0])
    if i == 0:
        return float(x[0])
    x0, x1, y0, y1 = x[i - 1], x[i], y[i - 1], y[i]
    if y1 == y0:
        return float(x1)
    return float(x0 + (threshold - y0) * (x1 - x0) / (y1 - y0))


def coherence_time(
    traj: Trajectory, p: int, q: int, threshold: float = 0.1, *,
    kappa: float = 1.0,
) -> float | None:
    """First κt at which P_pq drops below threshold; None if never reached.

    Trajectory times are natural units; kappa rescales them to the κt axis.
    A kappa of 0 (undamped cavity) leaves the axis in natural units.
    """
    scale = kappa if kappa > 0 else 1.0
    coh = np.abs(traj.cavity_rdms[:, p, q])
    return crossing_time(scale * traj.times, coh, threshold)


@dataclass(frozen=True)
class RunConfig:
    """Everything needed to reproduce one coherence-decay run.

    t_max_kappa is the time window in κt units; when kappa is 0 (no cavity
    damping, used by degenerate test configurations) it is read directly in
    natural units. threshold must sit strictly between 0 and the initial
    coherence, so a crossing is meaningful.
    """

    params: SystemParams
    reservoir: ReservoirSpec
    variant: VariantId
    mode: DissipationMode
    space: SpaceSpec
    initial: InitialStateSpec
    t_max_kappa: float
    samples: int = 400
    threshold: float = 0.1
    include_hamiltonian: bool = False
    integrator: IntegratorOptions = IntegratorOptions()

    def __post_init__(self) -> None:
        if self.t_max_kappa <= 0:
            raise ValueError(f"t_max_kappa must be > 0, got {self.t_max_kappa}")
        if self.samples < 2:
            raise ValueError(f"need at least 2 samples, got {self.samples}")
        p0 = self.initial.initial_coherence
        if not 0.0 < self.threshold < p0:
            raise ValueError(
                f"threshold must lie in (0, {p0:.6g}), got {self.threshold}"
            )

    def time_grid(self) -> np.ndarray:
        """Uniform sample times in natural units covering the κt window."""
        scale = self.params.kappa if self.params.kappa > 0 else 1.0
        return np.linspace(0.0, self.t_max_kappa / scale, self.samples)

    def kappa_times(self) -> np.ndarray:
        scale = self.params.kappa if self.params.kappa > 0 else 1.0
        return scale * self.time_grid()

    def with_space(self, dim_cavity: int, dim_mech: int) -> "RunConfig":
        return replace(self, space=SpaceSpec(dim_cavity=dim_cavity,
                                             dim_mech=dim_mech))


def build_run_liouvillian(config: RunConfig) -> Liouvillian:
    return build_liouvillian(
        config.variant, config.mode, config.params, config.reservoir,
        config.space, include_hamiltonian=config.include_hamiltonian,
    )


def run_trajectory(config: RunConfig, *, store_full: bool = False) -> Trajectory:
    """Integrate a config without touching the filesystem."""
    liouv = build_run_liouvillian(config)
    rho0 = initial_state(config.initial, config.space)
    return integrate(liouv, rho0, config.time_grid(), config.integrator,
                     store_full=store_full)


# -- configuration serialization ---------------------------------------------

def _reject_unknown(obj: dict, allowed: set[str], context: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ValueError(
            f"unknown key(s) {sorted(unknown)} in {context}; "
            f"allowed: {sorted(allowed)}"
        )


def config_to_dict(config: RunConfig) -> dict:
    out = {
        "params": asdict(config.params),
        "reservoir": asdict(config.reservoir),
        "variant": config.variant.value,
        "mode": config.mode.value,
        "space": asdict(config.space),
        "initial": asdict(config.initial),
        "t_max_kappa": config.t_max_kappa,
        "samples": config.samples,
        "threshold": config.threshold,
        "include_hamiltonian": config.include_hamiltonian,
        "integrator": {
            "rtol": config.integrator.rtol,
            "atol": config.integrator.atol,
            "max_step": config.integrator.max_step,
            "method": config.integrator.method.value,
        },
    }
    return out


def config_from_dict(data: dict) -> RunConfig:
    """Parse a configuration mapping; unknown keys anywhere are an error."""
    _reject_unknown(data, {
        "params", "reservoir", "variant", "mode", "space", "initial",
        "t_max_kappa", "samples", "threshold", "include_hamiltonian",
        "integrator",
    }, "run configuration")
    for key in ("params", "reservoir", "variant", "mode", "space",
                "t_max_kappa"):
        if key not in data:
            raise ValueError(f"missing required key '{key}' in run configuration")

    params_d = dict(data["params"])
    _reject_unknown(params_d, {"delta", "g0", "kappa", "gamma_m", "drive"},
                    "params")
    params = SystemParams(**params_d)

    res_d = dict(data["reservoir"])
    _reject_unknown(res_d, {"n_th", "r", "theta", "kT_over_wm"}, "reservoir")
    reservoir = ReservoirSpec(**res_d)

    space_d = dict(data["space"])
    _reject_unknown(space_d, {"dim_cavity", "dim_mech"}, "space")
    space = SpaceSpec(**space_d)

    init_d = dict(data.get("initial", {}))
    _reject_unknown(init_d, {"zeta_half", "phi", "p", "q", "u"}, "initial")
    initial = InitialStateSpec(**init_d)

    integ_d = dict(data.get("integrator", {}))
    _reject_unknown(integ_d, {"rtol", "atol", "max_step", "method"},
                    "integrator")
    if "method" in integ_d:
        integ_d["method"] = IntegratorMethod(integ_d["method"])
    integrator = IntegratorOptions(**integ_d)

    return RunConfig(
        params=params,
        reservoir=reservoir,
        variant=VariantId(data["variant"]),
        mode=DissipationMode(data["mode"]),
        space=space,
        initial=initial,
        t_max_kappa=float(data["t_max_kappa"]),
        samples=int(data.get("samples", 400)),
        threshold=float(data.get("threshold", 0.1)),
        include_hamiltonian=bool(data.get("include_hamiltonian", False)),
        integrator=integrator,
    )


def load_config(path: str | Path) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return config_from_dict(json.load(fh))


# -- run and sweep execution with file output --------------------------------

def _format_row(values) -> str:
    return ",".join(f"{v:.12g}" for v in values)


def write_trajectory_csv(path: Path, kappa_times: np.ndarray,
                         coh: np.ndarray, traj: Trajectory) -> None:
    lines = ["kappa_t,P_pq,trace_err,herm_err,min_eig"]
    for i in range(kappa_times.size):
        lines.append(_format_row((
            kappa_times[i], coh[i], traj.trace_err[i], traj.herm_err[i],
            traj.min_eig[i],
        )))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _complex_to_json(value):
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


def run(config: RunConfig, out_dir: str | Path, *, name: str = "run",
        notes: tuple[str, ...] = ()) -> dict:
    """Execute one config; write <name>.csv and <name>_manifest.json.

    Returns the manifest mapping (also written to disk).
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()

    liouv = build_run_liouvillian(config)
    rho0 = initial_state(config.initial, config.space)
    traj = integrate(liouv, rho0, config.time_grid(), config.integrator)

    p, q = config.initial.p, config.initial.q
    coh = np.abs(traj.cavity_rdms[:, p, q])
    kappa_times = config.kappa_times()
    ct = crossing_time(kappa_times, coh, config.threshold)

    csv_path = out / f"{name}.csv"
    write_trajectory_csv(csv_path, kappa_times, coh, traj)

    manifest = {
        "name": name,
        "config": config_to_dict(config),
        "rates": {k: _complex_to_json(v) for k, v in liouv.rates.items()},
        "initial_coherence": config.initial.initial_coherence,
        "coherence_time_kappa_t": ct,
        "diagnostics": {
            "max_trace_err": float(np.max(traj.trace_err)),
            "max_herm_err": float(np.max(traj.herm_err)),
            "min_eig": float(np.min(traj.min_eig)),
        },
        "integrator_stats": traj.stats,
        "csv": csv_path.name,
        "notes": list(notes),
        "wall_time_s": time.perf_counter() - t0,
    }
    manifest_path = out / f"{name}_manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n",
                             encoding="utf-8", newline="\n")
    return manifest


@dataclass(frozen=True)
class SweepGrid:
    """One-axis parameter sweep around a base configuration."""

    axis: str
    values: tuple[float, ...]
    base: RunConfig

    def __post_init__(self) -> None:
        if self.axis not in SWEEP_AXES:
            raise ValueError(
                f"sweep axis must be one of {SWEEP_AXES}, got {self.axis!r}"
            )
        if len(self.values) == 0:
            raise ValueError("sweep needs at least one value")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError("sweep values must be strictly increasing")


def apply_axis(base: RunConfig, axis: str, value: float) -> RunConfig:
    if axis == "r":
        return replace(base, reservoir=replace(base.reservoir, r=value))
    if axis == "theta":
        return replace(base, reservoir=replace(base.reservoir, theta=value))
    if axis == "g0":
        return replace(base, params=replace(base.params, g0=value))
    raise ValueError(f"sweep axis must be one of {SWEEP_AXES}, got {axis!r}")


def sweep_rows(
    grid: SweepGrid,
) -> tuple[list[tuple[str, float, float | None]], list[dict]]:
    """Coherence time per axis value, in input order; None = never crossed.

    Also returns one diagnostics mapping per point (trace/Hermiticity/
    positivity extrema of that integration), kept for the sweep manifest.
    """
    rows = []
    diagnostics = []
    for value in grid.values:
        cfg = apply_axis(grid.base, grid.axis, value)
        traj = run_trajectory(cfg)
        ct = coherence_time(traj, cfg.initial.p, cfg.initial.q, cfg.threshold,
                            kappa=cfg.params.kappa)
        rows.append((grid.axis, value, ct))
        diagnostics.append({
            "value": value,
            "max_trace_err": float(np.max(traj.trace_err)),
            "max_herm_err": float(np.max(traj.herm_err)),
            "min_eig": float(np.min(traj.min_eig)),
        })
    return rows, diagnostics


def write_sweep_csv(path: Path, rows, variant: VariantId,
                    mode: DissipationMode) -> None:
    lines = ["axis,value,coherence_time_kappa_t,variant,mode"]
    for axis, value, ct in rows:
        ct_cell = "" if ct is None else f"{ct:.12g}"
        lines.append(f"{axis},{value:.12g},{ct_cell},{variant.value},{mode.value}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def sweep(grid: SweepGrid, out_dir: str | Path, *, name: str = "sweep",
          notes: tuple[str, ...] = ()) -> dict:
    """Execute a sweep; write <name>.csv and <name>_manifest.json."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    t0 = time.perf_counter()
    rows, point_diagnostics = sweep_rows(grid)
    csv_path = out / f"{name}.csv"
    write_sweep_csv(csv_path, rows, grid.base.variant, grid.base.mode)
    manifest = {
        "name": name,
        "axis": grid.axis,
        "values": list(grid.values),
        "base_config": config_to_dict(grid.base),
        "coherence_times_kappa_t": [ct for _, _, ct in rows],
        "diagnostics": {
            "max_trace_err": max(d["max_trace_err"] for d in point_diagnostics),
            "max_herm_err": max(d["max_herm_err"] for d in point_diagnostics),
            "min_eig": min(d["min_eig"] for d in point_diagnostics),
            "per_point": point_diagnostics,
        },
        "csv": csv_path.name,
        "notes": list(notes),
        "wall_time_s": time.perf_counter() - t0,
    }
    manifest_path = out / f"{name}_manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n",
                             encoding="utf-8", newline="\n")
    return manifest
