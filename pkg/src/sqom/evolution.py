"""Time integration of vectorized density matrices under a Liouvillian.

The workhorse is an embedded Dormand-Prince 4(5) pair on vec(ρ) driven by
sparse matrix-vector products, with mixed absolute/relative error control and
step-to-boundary sampling. After every accepted step the state is symmetrized,
ρ ← (ρ + ρ†)/2, and the size of the applied correction is logged rather than
hidden; trace and positivity are never enforced, only measured, so the
diagnostics expose real generator or truncation defects.

Everything here is deterministic: no randomness, fixed summation order, so
identical inputs give bitwise-identical trajectories on one platform.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.linalg import expm

from .fock import partial_trace_mech
from .liouvillian import Liouvillian

EXACT_EXPM_MAX_DIM = 32  # dense D² × D² exponential beyond this is pointless


class IntegratorMethod(Enum):
    ADAPTIVE_RK = "adaptive_rk"
    EXACT_EXPM = "exact_expm"


class StiffnessError(RuntimeError):
    """Step size underflowed; the problem is stiff for the explicit pair."""

    def __init__(self, t: float, step: float, err_norm: float) -> None:
        super().__init__(
            f"step size underflow at t = {t:.6g} (h = {step:.3e}, "
            f"error norm {err_norm:.3e}); the generator is too stiff for the "
            f"explicit pair at the requested tolerance"
        )
        self.t = t
        self.step = step
        self.err_norm = err_norm


@dataclass(frozen=True)
class IntegratorOptions:
    """Error-control settings for integrate().

    rtol/atol enter a mixed per-component error norm; max_step caps the step
    in natural time units. EXACT_EXPM densifies the generator and is only
    permitted for small spaces (dim <= 32), as a cross-check oracle.
    """

    rtol: float = 1e-8
    atol: float = 1e-10
    max_step: float | None = None
    method: IntegratorMethod = IntegratorMethod.ADAPTIVE_RK

    def __post_init__(self) -> None:
        if self.rtol <= 0 or self.atol <= 0:
            raise ValueError(
                f"tolerances must be > 0, got rtol={self.rtol}, atol={self.atol}"
            )
        if self.max_step is not None and self.max_step <= 0:
            raise ValueError(f"max_step must be > 0, got {self.max_step}")


@dataclass
class Trajectory:
    """Sampled evolution with per-sample integrity diagnostics.

    times are the sample times in natural units (1/ω_m); the κt axis used in
    reports is κ·times, written by the experiment layer. cavity_rdms holds
    the mechanically-traced cavity matrix at each sample. herm_err[i] is the
    largest symmetrization correction applied between samples i-1 and i
    (at i = 0, the Hermiticity defect of the initial state itself).
    """

    times: np.ndarray
    cavity_rdms: np.ndarray
    trace_err: np.ndarray
    herm_err: np.ndarray
    min_eig: np.ndarray
    stats: dict = field(default_factory=dict)
    states: np.ndarray | None = None

    def __post_init__(self) -> None:
        if np.any(np.diff(self.times) <= 0):
            raise ValueError("sample times must be strictly increasing")


# Dormand-Prince 4(5) tableau; row i holds the a_ij of stage i.
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784,
                   11 / 84, 0.0])
_DP_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640,
                   -92097 / 339200, 187 / 2100, 1 / 40])
_DP_ERR = _DP_B5 - _DP_B4

_SAFETY = 0.9
_MIN_SHRINK = 0.2
_MAX_GROW = 5.0


def _vec(rho: np.ndarray) -> np.ndarray:
    return np.asarray(rho, dtype=complex).reshape(-1, order="F")


def _unvec(y: np.ndarray, dim: int) -> np.ndarray:
    return y.reshape(dim, dim, order="F")


def _error_norm(err: np.ndarray, y_old: np.ndarray, y_new: np.ndarray,
                opts: IntegratorOptions) -> float:
    scale = opts.atol + opts.rtol * np.maximum(np.abs(y_old), np.abs(y_new))
    # NaN from an unintegrable generator propagates to the caller, which
    # maps a non-finite norm to the hardest step shrink
    with np.errstate(invalid="ignore", over="ignore"):
        return float(np.sqrt(np.mean(np.abs(err / scale) ** 2)))


def _initial_step(matvec, y0: np.ndarray, t_span: float,
                  opts: IntegratorOptions) -> float:
    # Hairer-style heuristic: probe the derivative scale with one Euler step.
    scale = opts.atol + opts.rtol * np.abs(y0)
    f0 = matvec(y0)
    d0 = float(np.sqrt(np.mean(np.abs(y0 / scale) ** 2)))
    d1 = float(np.sqrt(np.mean(np.abs(f0 / scale) ** 2)))
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    f1 = matvec(y0 + h0 * f0)
    d2 = float(np.sqrt(np.mean(np.abs((f1 - f0) / scale) ** 2))) / h0
    if max(d1, d2) <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    h = min(100.0 * h0, h1, t_span)
    if opts.max_step is not None:
        h = min(h, opts.max_step)
    # a non-finite generator poisons the probe; start tiny and let the
    # rejection path shrink to the stiffness error instead of hanging
    if not math.isfinite(h) or h <= 0.0:
        h = 1e-6
    return h


def integrate(
    liouv: Liouvillian,
    rho0: np.ndarray,
    times: np.ndarray,
    opts: IntegratorOptions = IntegratorOptions(),
    *,
    store_full: bool = False,
) -> Trajectory:
    """Propagate rho0 from times[0] through every sample time.

    rho0 is taken as the state at times[0]. Samples are hit exactly by step
    truncation; the adaptive step proposal survives across sample boundaries
    so dense sampling does not degrade step control.
    """
    space = liouv.space
    dim = space.dim
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (dim, dim):
        raise ValueError(
            f"initial state shape {rho0.shape} does not match space dim {dim}"
        )
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size < 1:
        raise ValueError("times must be a nonempty 1-d array")
    if np.any(np.diff(times) <= 0):
        raise ValueError("sample times must be strictly increasing")

    if opts.method is IntegratorMethod.EXACT_EXPM:
        return _integrate_expm(liouv, rho0, times, store_full=store_full)

    matrix = liouv.matrix.tocsr()

    def matvec(y: np.ndarray) -> np.ndarray:
        return matrix @ y

    t_start = time.perf_counter()
    n_samples = times.size
    d_c = space.dim_cavity
    cavity_rdms = np.empty((n_samples, d_c, d_c), dtype=complex)
    trace_err = np.empty(n_samples)
    herm_err = np.empty(n_samples)
    min_eig = np.empty(n_samples)
    states = np.empty((n_samples, dim, dim), dtype=complex) if store_full else None

    accepted = rejected = n_matvec = 0
    herm_since_sample = float(np.max(np.abs(rho0 - rho0.conj().T)))

    def record(i: int, rho: np.ndarray) -> None:
        nonlocal herm_since_sample
        cavity_rdms[i] = partial_trace_mech(rho, space)
        trace_err[i] = abs(complex(np.trace(rho)) - 1.0)
        herm_err[i] = herm_since_sample
        min_eig[i] = float(np.min(np.linalg.eigvalsh(rho)))
        if states is not None:
            states[i] = rho
        herm_since_sample = 0.0

    y = _vec(0.5 * (rho0 + rho0.conj().T))
    record(0, _unvec(y, dim))

    if n_samples > 1:
        t = float(times[0])
        t_end = float(times[-1])
        h_prop = _initial_step(matvec, y, t_end - t, opts)
        n_matvec += 2
        f_cur = matvec(y)
        n_matvec += 1
        k = np.empty((7, y.size), dtype=complex)

        for i in range(1, n_samples):
            t_target = float(times[i])
            while t < t_target - 1e-14 * max(1.0, abs(t_target)):
                h = min(h_prop, t_target - t)
                if opts.max_step is not None:
                    h = min(h, opts.max_step)

                k[0] = f_cur
                for s in range(1, 7):
                    incr = sum(
                        (a * k[j] for j, a in enumerate(_DP_A[s]) if a != 0.0),
                        start=np.zeros_like(y),
                    )
                    k[s] = matvec(y + h * incr)
                    n_matvec += 1
                y_new = y + h * (
                    _DP_B5[0] * k[0] + _DP_B5[2] * k[2] + _DP_B5[3] * k[3]
                    + _DP_B5[4] * k[4] + _DP_B5[5] * k[5]
                )
                err_vec = h * (
                    _DP_ERR[0] * k[0] + _DP_ERR[2] * k[2] + _DP_ERR[3] * k[3]
                    + _DP_ERR[4] * k[4] + _DP_ERR[5] * k[5] + _DP_ERR[6] * k[6]
                )
                err = _error_norm(err_vec, y, y_new, opts)

                if err <= 1.0:
                    accepted += 1
                    t += h
                    rho = _unvec(y_new, dim)
                    defect = float(np.max(np.abs(rho - rho.conj().T)))
                    herm_since_sample = max(herm_since_sample, defect)
                    rho = 0.5 * (rho + rho.conj().T)
                    y = _vec(rho)
                    f_cur = matvec(y)
                    n_matvec += 1
                    grow = _SAFETY * err ** -0.2 if err > 0 else _MAX_GROW
                    h_prop = h * min(_MAX_GROW, max(_MIN_SHRINK, grow))
                else:
                    rejected += 1
                    # a NaN/inf error norm fails every comparison, so it must
                    # be mapped to the hardest shrink explicitly
                    shrink = (_SAFETY * err ** -0.2 if math.isfinite(err)
                              else _MIN_SHRINK)
                    h_prop = h * max(_MIN_SHRINK, min(1.0, shrink))
                    if not math.isfinite(h_prop) \
                            or h_prop < 1e-14 * max(1.0, abs(t)):
                        raise StiffnessError(t, h_prop, err)
            t = t_target
            record(i, _unvec(y, dim))

    stats = {
        "method": IntegratorMethod.ADAPTIVE_RK.value,
        "steps_accepted": accepted,
        "steps_rejected": rejected,
        "matvecs": n_matvec,
        "rtol": opts.rtol,
        "atol": opts.atol,
        "max_trace_err": float(np.max(trace_err)),
        "max_herm_err": float(np.max(herm_err)),
        "min_eig": float(np.min(min_eig)),
        "wall_time_s": time.perf_counter() - t_start,
    }
    return Trajectory(
        times=times.copy(),
        cavity_rdms=cavity_rdms,
        trace_err=trace_err,
        herm_err=herm_err,
        min_eig=min_eig,
        stats=stats,
        states=states,
    )


def exact_expm_evolve(liouv: Liouvillian, rho0: np.ndarray, t: float) -> np.ndarray:
    """Dense matrix-exponential propagation, exact up to expm accuracy.

    Restricted to dim <= 32 (the superoperator is densified); intended as a
    cross-check oracle for integrate, not for production runs.
    """
    dim = liouv.space.dim
    if dim > EXACT_EXPM_MAX_DIM:
        raise ValueError(
            f"exact propagation limited to dim <= {EXACT_EXPM_MAX_DIM}, "
            f"got {dim}"
        )
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (dim, dim):
        raise ValueError(
            f"initial state shape {rho0.shape} does not match space dim {dim}"
        )
    propagator = expm(liouv.matrix.toarray() * t)
    return _unvec(propagator @ _vec(rho0), dim)


def _integrate_expm(
    liouv: Liouvillian, rho0: np.ndarray, times: np.ndarray, *, store_full: bool
) -> Trajectory:
    space = liouv.space
    dim = space.dim
    if dim > EXACT_EXPM_MAX_DIM:
        raise ValueError(
            f"exact propagation limited to dim <= {EXACT_EXPM_MAX_DIM}, "
            f"got {dim}"
        )
    t_start = time.perf_counter()
    n_samples = times.size
    d_c = space.dim_cavity
    cavity_rdms = np.empty((n_samples, d_c, d_c), dtype=complex)
    trace_err = np.empty(n_samples)
    herm_err = np.empty(n_samples)
    min_eig = np.empty(n_samples)
    states = np.empty((n_samples, dim, dim), dtype=complex) if store_full else None

    dense = liouv.matrix.toarray()
    y = _vec(rho0)
    for i, t_i in enumerate(times):
        y_i = y if i == 0 else expm(dense * (t_i - times[0])) @ y
        rho = _unvec(y_i, dim)
        cavity_rdms[i] = partial_trace_mech(rho, space)
        trace_err[i] = abs(complex(np.trace(rho)) - 1.0)
        herm_err[i] = float(np.max(np.abs(rho - rho.conj().T)))
        min_eig[i] = float(
            np.min(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))))
        if states is not None:
            states[i] = rho
    stats = {
        "method": IntegratorMethod.EXACT_EXPM.value,
        "steps_accepted": n_samples - 1,
        "steps_rejected": 0,
        "matvecs": 0,
        "max_trace_err": float(np.max(trace_err)),
        "max_herm_err": float(np.max(herm_err)),
        "min_eig": float(np.min(min_eig)),
        "wall_time_s": time.perf_counter() - t_start,
    }
    return Trajectory(
        times=np.asarray(times, dtype=float).copy(),
        cavity_rdms=cavity_rdms,
        trace_err=trace_err,
        herm_err=herm_err,
        min_eig=min_eig,
        stats=stats,
        states=states,
    )


def convergence_check(config) -> dict:
    """Repeat a run at enlarged truncation and report the observable shift.

    The refined space scales dim_mech by 1.5 (rounded up) and adds 2 cavity
    levels. The deviation is max |P(t)_base − P(t)_refined| over the sample
    grid, normalized by the initial coherence; above 1% the configuration is
    flagged as unconverged. The report also carries the coherence time of
    both runs and their shift: for sweep-style outputs the crossing time is
    the only quantity that leaves the process, and it can be well converged
    even when the late tail of the curve (after the crossing) is not.
    """
    from .experiments import coherence_time, run_trajectory  # deferred: experiments imports us

    base_traj = run_trajectory(config)
    refined_cfg = config.with_space(
        dim_cavity=config.space.dim_cavity + 2,
        dim_mech=math.ceil(config.space.dim_mech * 1.5),
    )
    ref_traj = run_trajectory(refined_cfg)

    p, q = config.initial.p, config.initial.q
    base_coh = np.abs(base_traj.cavity_rdms[:, p, q])
    ref_coh = np.abs(ref_traj.cavity_rdms[:, p, q])
    p0 = base_coh[0]
    max_abs = float(np.max(np.abs(base_coh - ref_coh)))
    max_rel = float(max_abs / p0) if p0 > 0 else float(max_abs)

    kappa = config.params.kappa
    ct_base = coherence_time(base_traj, p, q, config.threshold, kappa=kappa)
    ct_ref = coherence_time(ref_traj, p, q, config.threshold, kappa=kappa)
    if ct_base is not None and ct_ref is not None:
        ct_shift = float(abs(ct_base - ct_ref) / ct_base) if ct_base > 0 else 0.0
    else:
        ct_shift = None

    return {
        "baseline_space": {"dim_cavity": config.space.dim_cavity,
                           "dim_mech": config.space.dim_mech},
        "refined_space": {"dim_cavity": refined_cfg.space.dim_cavity,
                          "dim_mech": refined_cfg.space.dim_mech},
        "samples": int(base_traj.times.size),
        "max_abs_deviation": max_abs,
        "max_rel_deviation": max_rel,
        "flagged": bool(max_rel > 0.01),
        "coherence_time_base": ct_base,
        "coherence_time_refined": ct_ref,
        "coherence_time_rel_shift": ct_shift,
    }
