"""Fast structural self-checks, run by the ``validate`` CLI subcommand.

These are smoke-level invariants on small spaces (seconds, not minutes): the
reduction identities between variants, trace-freeness of the preserving mode,
Hermiticity preservation, the exactness of the dressed-dissipator split, and
agreement between the adaptive integrator and the exact exponential. The
pytest suite covers the same ground more thoroughly; this exists so an
installed copy can be sanity-checked without a checkout.
"""

from __future__ import annotations

import math

import numpy as np

from .evolution import IntegratorOptions, exact_expm_evolve, integrate
from .experiments import InitialStateSpec, initial_state
from .fock import SpaceSpec, cavity_op, destroy, mech_op, number
from .liouvillian import (
    DissipationMode,
    VariantId,
    build_liouvillian,
    dissipator,
    expand_dressed_dissipator,
    squeeze_cross_term,
)
from .model import SystemParams
from .reservoir import (
    ReservoirSpec,
    squeeze_dephasing_factor,
    squeezed_coefficients,
)

_SPACE = SpaceSpec(dim_cavity=4, dim_mech=6)
_PARAMS = SystemParams(delta=0.0, g0=0.8, kappa=0.05, gamma_m=0.05 / 3)

_REDUCTION_PAIRS = (
    (VariantId.DSME_SQUEEZED, VariantId.DSME_THERMAL),
    (VariantId.DSME_SQUEEZED_HIGHT, VariantId.DSME_THERMAL_HIGHT),
    (VariantId.SME_DRESSED_SQUEEZED, VariantId.SME_DRESSED_THERMAL),
)


def _matrix_gap(a, b) -> float:
    diff = (a - b).tocoo()
    return float(np.max(np.abs(diff.data))) if diff.nnz else 0.0


def _check_reductions() -> tuple[str, bool, str]:
    res = ReservoirSpec(n_th=1.7, r=0.0, theta=0.9)
    worst = 0.0
    for squeezed, thermal in _REDUCTION_PAIRS:
        for mode in DissipationMode:
            left = build_liouvillian(squeezed, mode, _PARAMS, res, _SPACE)
            right = build_liouvillian(thermal, mode, _PARAMS, res, _SPACE)
            worst = max(worst, _matrix_gap(left.matrix, right.matrix))
    return ("variant reductions at r = 0", worst <= 1e-12,
            f"max entrywise gap {worst:.2e}")


def _check_trace_freeness() -> tuple[str, bool, str]:
    res = ReservoirSpec(n_th=2.0, r=0.7, theta=1.3)
    tr_vec = np.eye(_SPACE.dim, dtype=complex).reshape(-1, order="F")
    worst = 0.0
    for variant in VariantId:
        liouv = build_liouvillian(variant, DissipationMode.TRACE_PRESERVING,
                                  _PARAMS, res, _SPACE)
        worst = max(worst, float(np.max(np.abs(tr_vec @ liouv.matrix))))
    return ("trace functional annihilated (preserving mode)", worst <= 1e-10,
            f"max |vec(I)* L| {worst:.2e}")


def _check_hermiticity_preservation() -> tuple[str, bool, str]:
    rng = np.random.default_rng(11)
    raw = rng.normal(size=(_SPACE.dim, _SPACE.dim)) \
        + 1j * rng.normal(size=(_SPACE.dim, _SPACE.dim))
    rho = 0.5 * (raw + raw.conj().T)
    vec = rho.reshape(-1, order="F")
    res = ReservoirSpec(n_th=2.0, r=0.7, theta=1.3)
    worst = 0.0
    for variant in VariantId:
        for mode in DissipationMode:
            liouv = build_liouvillian(variant, mode, _PARAMS, res, _SPACE)
            out = (liouv.matrix @ vec).reshape(_SPACE.dim, _SPACE.dim,
                                               order="F")
            worst = max(worst, float(np.max(np.abs(out - out.conj().T))))
    return ("Hermiticity preserved by every variant/mode", worst <= 1e-12,
            f"max defect {worst:.2e}")


def _check_dressed_split() -> tuple[str, bool, str]:
    worst = 0.0
    for g0 in (0.1, 0.8):
        params = SystemParams(delta=0.0, g0=g0, kappa=0.05, gamma_m=0.05 / 3)
        main, dephasing, residual = expand_dressed_dissipator(params, _SPACE)
        b = mech_op(destroy(_SPACE.dim_mech), _SPACE)
        gap = _matrix_gap(main + dephasing + residual, dissipator(b))
        worst = max(worst, gap)
    return ("dressed-dissipator split sums to D[b]", worst <= 1e-12,
            f"max entrywise gap {worst:.2e}")


def _check_sandwich_phase() -> tuple[str, bool, str]:
    # At theta = pi/2 the cos-theta sandwich term vanishes, so the dressed
    # standard equation is the squeezed equation plus pure dephasing.
    res = ReservoirSpec(n_th=1.3, r=0.8, theta=math.pi / 2)
    worst = 0.0
    for mode in DissipationMode:
        full = build_liouvillian(VariantId.SME_DRESSED_SQUEEZED, mode,
                                 _PARAMS, res, _SPACE)
        base = build_liouvillian(VariantId.DSME_SQUEEZED, mode, _PARAMS, res,
                                 _SPACE)
        n_eff = squeezed_coefficients(res).n_eff
        deph = _PARAMS.gamma_m * (2.0 * n_eff + 1.0) * _PARAMS.beta0 ** 2
        n_c = cavity_op(number(_SPACE.dim_cavity), _SPACE)
        expected = base.matrix + deph * dissipator(n_c)
        worst = max(worst, _matrix_gap(full.matrix, expected))
    return ("sandwich term vanishes at theta = pi/2", worst <= 1e-12,
            f"max entrywise gap {worst:.2e}")


def _check_cross_term_trace() -> tuple[str, bool, str]:
    rng = np.random.default_rng(7)
    raw = rng.normal(size=(_SPACE.dim, _SPACE.dim)) \
        + 1j * rng.normal(size=(_SPACE.dim, _SPACE.dim))
    rho = raw @ raw.conj().T
    rho /= np.trace(rho)
    vec = rho.reshape(-1, order="F")
    o = mech_op(destroy(_SPACE.dim_mech), _SPACE)
    term = squeeze_cross_term(o, 0.4 - 0.3j,
                              DissipationMode.TRACE_PRESERVING)
    out = (term @ vec).reshape(_SPACE.dim, _SPACE.dim, order="F")
    drift = abs(complex(np.trace(out)))
    return ("completed cross term is trace-free", drift <= 1e-12,
            f"|d(tr)/dt| {drift:.2e}")


def _check_dephasing_factor() -> tuple[str, bool, str]:
    worst = 0.0
    for r in np.linspace(0.0, 2.0, 21):
        worst = max(
            worst,
            abs(squeeze_dephasing_factor(r, math.pi) - math.exp(-2 * r)),
            abs(squeeze_dephasing_factor(r, 0.0) - math.exp(2 * r)),
        )
    return ("dephasing factor hits exp(±2r) at theta = pi, 0", worst <= 1e-14,
            f"max deviation {worst:.2e}")


def _check_integrator_vs_exact() -> tuple[str, bool, str]:
    space = SpaceSpec(dim_cavity=2, dim_mech=3)
    res = ReservoirSpec(n_th=0.5)
    liouv = build_liouvillian(VariantId.DSME_THERMAL,
                              DissipationMode.TRACE_PRESERVING, _PARAMS, res,
                              space)
    rho0 = initial_state(InitialStateSpec(p=0, q=1), space)
    times = np.linspace(0.0, 8.0, 5)
    opts = IntegratorOptions(rtol=1e-8, atol=1e-10)
    traj = integrate(liouv, rho0, times, opts, store_full=True)
    worst = 0.0
    for i, t in enumerate(times):
        exact = exact_expm_evolve(liouv, rho0, float(t))
        worst = max(worst, float(np.max(np.abs(traj.states[i] - exact))))
    return ("adaptive integrator matches exact exponential",
            worst <= 10 * opts.rtol, f"max |Δρ| {worst:.2e}")


_CHECKS = (
    _check_reductions,
    _check_trace_freeness,
    _check_hermiticity_preservation,
    _check_dressed_split,
    _check_sandwich_phase,
    _check_cross_term_trace,
    _check_dephasing_factor,
    _check_integrator_vs_exact,
)


def run_validation(verbose: bool = True) -> int:
    """Run every check; print one PASS/FAIL line each; return failure count."""
    failures = 0
    for check in _CHECKS:
        name, ok, detail = check()
        if not ok:
            failures += 1
        if verbose:
            print(f"{'PASS' if ok else 'FAIL'}  {name} ({detail})")
    if verbose:
        total = len(_CHECKS)
        print(f"{total - failures}/{total} checks passed")
    return failures
