"""Master-equation variants as sparse superoperators.

Vectorization is column-stacking throughout: vec(ρ) stacks columns, so
vec(A ρ B) = (Bᵀ ⊗ A) vec(ρ). Every superoperator built here follows this one
convention; mixing conventions corrupts sums silently, so no row-stacking
helpers exist.

The dressed-basis equations use the shifted mechanical jump B = b − β0 N̂_c,
whose dissipator relaxes each cavity number sector toward its own displaced
mechanical vacuum. Phase-sensitive (squeezed-bath) equations add cross terms
pairing a jump operator with itself non-conjugated; those terms alone do not
conserve trace, so two assembly modes exist (see DissipationMode).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
import scipy.sparse as sp

from .fock import SpaceSpec, cavity_op, destroy, mech_op, number
from .model import SystemParams, hamiltonian_dressed
from .reservoir import (
    ReservoirSpec,
    cavity_squeezed_coefficients,
    dephasing_rate_high_t,
    dephasing_rate_thermal,
    sme_extra_rates,
    squeezed_coefficients,
)

PRUNE_TOL = 1e-15  # magnitudes below this are dropped on construction


class VariantId(Enum):
    """Which master equation a Liouvillian realizes.

    DSME_* use the dressed mechanical jump B = b − β0 N̂_c; SME_* variants are
    standard-basis equations, expressed either in the bare basis
    (SME_SQUEEZED_BARE, valid for β0 << 1) or transformed into the dressed
    basis, where they pick up photon-number dephasing terms. *_HIGHT variants
    carry the stronger dephasing rate of the kT >> ω_m regime.
    """

    DSME_THERMAL = "dsme_thermal"
    SME_DRESSED_THERMAL = "sme_dressed_thermal"
    SME_SQUEEZED_BARE = "sme_squeezed_bare"
    DSME_SQUEEZED = "dsme_squeezed"
    DSME_THERMAL_HIGHT = "dsme_thermal_hight"
    DSME_SQUEEZED_HIGHT = "dsme_squeezed_hight"
    SME_DRESSED_SQUEEZED = "sme_dressed_squeezed"


class DissipationMode(Enum):
    """How phase-sensitive cross terms enter the generator.

    LITERAL keeps them as bare sandwich products −M* oρo − M o†ρo†, which
    drifts the trace at rate −2 Re(M* <oo>); TRACE_PRESERVING completes each
    with its anticommutator half, −M*(oρo − ½{oo, ρ}) and conjugate, making
    the generator exactly trace-free. Thermal variants have no cross terms
    and are identical in both modes.
    """

    LITERAL = "literal"
    TRACE_PRESERVING = "preserving"


@dataclass(frozen=True)
class Liouvillian:
    """A built generator: sparse matrix on vec(ρ) plus its provenance.

    rates maps term labels to the coefficients actually assembled, for run
    manifests; complex entries are the phase-sensitive M coefficients.
    """

    matrix: sp.csr_matrix
    variant: VariantId
    mode: DissipationMode
    space: SpaceSpec
    include_hamiltonian: bool = False
    rates: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.space.dim


def _sparse(op: np.ndarray) -> sp.csr_matrix:
    m = sp.csr_matrix(np.asarray(op, dtype=complex))
    m.eliminate_zeros()
    return m


def _pruned(m: sp.spmatrix) -> sp.csr_matrix:
    m = m.tocsr()
    m.data[np.abs(m.data) < PRUNE_TOL] = 0
    m.eliminate_zeros()
    return m


def spre(op: np.ndarray | sp.spmatrix) -> sp.csr_matrix:
    """Superoperator for left multiplication, vec(A ρ)."""
    a = _sparse(op) if isinstance(op, np.ndarray) else op.tocsr()
    return sp.kron(sp.identity(a.shape[0], dtype=complex, format="csr"), a,
                   format="csr")


def spost(op: np.ndarray | sp.spmatrix) -> sp.csr_matrix:
    """Superoperator for right multiplication, vec(ρ A)."""
    a = _sparse(op) if isinstance(op, np.ndarray) else op.tocsr()
    return sp.kron(a.T, sp.identity(a.shape[0], dtype=complex, format="csr"),
                   format="csr")


def sandwich(left: np.ndarray | sp.spmatrix,
             right: np.ndarray | sp.spmatrix) -> sp.csr_matrix:
    """Superoperator for vec(A ρ B) with A = left, B = right."""
    a = _sparse(left) if isinstance(left, np.ndarray) else left.tocsr()
    b = _sparse(right) if isinstance(right, np.ndarray) else right.tocsr()
    return sp.kron(b.T, a, format="csr")


def dissipator(o: np.ndarray | sp.spmatrix) -> sp.csr_matrix:
    """Lindblad dissipator D[o]ρ = oρo† − ½{o†o, ρ} as a superoperator."""
    o = _sparse(o) if isinstance(o, np.ndarray) else o.tocsr()
    od = o.conj().T.tocsr()
    odo = (od @ o).tocsr()
    return _pruned(sandwich(o, od) - 0.5 * (spre(odo) + spost(odo)))


def squeeze_cross_term(
    o: np.ndarray | sp.spmatrix, m: complex, mode: DissipationMode
) -> sp.csr_matrix:
    """Phase-sensitive cross term −M* oρo − M o†ρo† as a superoperator.

    In TRACE_PRESERVING mode each piece is completed with its anticommutator
    half, −M*(oρo − ½{oo, ρ}) − M(o†ρo† − ½{o†o†, ρ}), which cancels the
    trace derivative exactly; LITERAL emits the bare sandwich products.
    """
    o = _sparse(o) if isinstance(o, np.ndarray) else o.tocsr()
    if m == 0:
        d2 = o.shape[0] ** 2
        return sp.csr_matrix((d2, d2), dtype=complex)
    od = o.conj().T.tocsr()
    term = -np.conj(m) * sandwich(o, o) - m * sandwich(od, od)
    if mode is DissipationMode.TRACE_PRESERVING:
        oo = (o @ o).tocsr()
        odod = (od @ od).tocsr()
        term = term + 0.5 * np.conj(m) * (spre(oo) + spost(oo))
        term = term + 0.5 * m * (spre(odod) + spost(odod))
    return _pruned(term)


def hamiltonian_superoperator(h: np.ndarray) -> sp.csr_matrix:
    """Coherent part −i[H, ρ] as a superoperator."""
    hs = _sparse(h)
    return _pruned(-1j * (spre(hs) - spost(hs)))


def _mech_jumps(
    space: SpaceSpec, beta0: float, dressed: bool
) -> tuple[sp.csr_matrix, sp.csr_matrix]:
    """Down/up mechanical jump pair, shifted by β0 N̂_c when dressed."""
    b = mech_op(destroy(space.dim_mech), space)
    if dressed:
        b = b - beta0 * cavity_op(number(space.dim_cavity), space)
    bs = _sparse(b)
    return bs, bs.conj().T.tocsr()


def build_liouvillian(
    variant: VariantId,
    mode: DissipationMode,
    params: SystemParams,
    reservoir: ReservoirSpec,
    space: SpaceSpec,
    *,
    include_hamiltonian: bool = False,
) -> Liouvillian:
    """Assemble the superoperator for one master-equation variant.

    The dissipative part is always built; the coherent part −i[H, ρ] with the
    dressed (diagonal) Hamiltonian is added only when include_hamiltonian is
    set, since the equations are stated in the interaction picture and the
    coherence magnitudes studied downstream are picture-independent in their
    regime of validity. Thermal variants read only n_th (and the temperature
    for the high-T dephasing rate); squeeze parameters are ignored by them.
    """
    gamma, kappa, beta0 = params.gamma_m, params.kappa, params.beta0
    a_full = _sparse(cavity_op(destroy(space.dim_cavity), space))
    n_c = _sparse(cavity_op(number(space.dim_cavity), space))
    rates: dict[str, object] = {}
    d2 = space.dim ** 2
    total = sp.csr_matrix((d2, d2), dtype=complex)

    def thermal_mech(dressed: bool) -> sp.csr_matrix:
        down, up = _mech_jumps(space, beta0, dressed)
        rates["mech_down"] = gamma * (reservoir.n_th + 1.0)
        rates["mech_up"] = gamma * reservoir.n_th
        return (gamma * (reservoir.n_th + 1.0) * dissipator(down)
                + gamma * reservoir.n_th * dissipator(up))

    def squeezed_mech(dressed: bool) -> sp.csr_matrix:
        coeff = squeezed_coefficients(reservoir)
        down, up = _mech_jumps(space, beta0, dressed)
        rates["mech_down"] = gamma * (coeff.n_eff + 1.0)
        rates["mech_up"] = gamma * coeff.n_eff
        rates["mech_cross_m"] = coeff.m_eff
        return (gamma * (coeff.n_eff + 1.0) * dissipator(down)
                + gamma * coeff.n_eff * dissipator(up)
                + gamma * squeeze_cross_term(down, coeff.m_eff, mode))

    def plain_cavity() -> sp.csr_matrix:
        rates["cavity_down"] = kappa
        return kappa * dissipator(a_full)

    def squeezed_cavity() -> sp.csr_matrix:
        coeff = cavity_squeezed_coefficients(reservoir)
        rates["cavity_down"] = kappa * (coeff.n_eff + 1.0)
        rates["cavity_up"] = kappa * coeff.n_eff
        rates["cavity_cross_m"] = coeff.m_eff
        return (kappa * (coeff.n_eff + 1.0) * dissipator(a_full)
                + kappa * coeff.n_eff * dissipator(a_full.conj().T.tocsr())
                + kappa * squeeze_cross_term(a_full, coeff.m_eff, mode))

    def number_dephasing(rate: float) -> sp.csr_matrix:
        rates["number_dephasing"] = rate
        return rate * dissipator(n_c)

    if variant is VariantId.DSME_THERMAL:
        total = thermal_mech(dressed=True) + plain_cavity()
    elif variant is VariantId.SME_DRESSED_THERMAL:
        total = (thermal_mech(dressed=True) + plain_cavity()
                 + number_dephasing(
                     dephasing_rate_thermal(gamma, reservoir.n_th, beta0)))
    elif variant is VariantId.SME_SQUEEZED_BARE:
        total = squeezed_mech(dressed=False) + squeezed_cavity()
    elif variant is VariantId.DSME_SQUEEZED:
        total = squeezed_mech(dressed=True) + squeezed_cavity()
    elif variant is VariantId.DSME_THERMAL_HIGHT:
        thermal_res = ReservoirSpec(n_th=reservoir.n_th,
                                    kT_over_wm=reservoir.kT_over_wm)
        total = (thermal_mech(dressed=True) + plain_cavity()
                 + number_dephasing(
                     dephasing_rate_high_t(gamma, thermal_res, beta0)))
    elif variant is VariantId.DSME_SQUEEZED_HIGHT:
        total = (squeezed_mech(dressed=True) + squeezed_cavity()
                 + number_dephasing(
                     dephasing_rate_high_t(gamma, reservoir, beta0)))
    elif variant is VariantId.SME_DRESSED_SQUEEZED:
        sandwich_rate, deph_rate = sme_extra_rates(gamma, reservoir, beta0)
        total = squeezed_mech(dressed=True) + squeezed_cavity()
        # +rate N̂_c ρ N̂_c enters as a cross term with M = −rate/2; in
        # TRACE_PRESERVING mode the completion turns it into rate·D[N̂_c],
        # which combines with the dephasing below into a valid channel.
        rates["number_sandwich"] = sandwich_rate
        total = total + squeeze_cross_term(n_c, -0.5 * sandwich_rate, mode)
        total = total + number_dephasing(deph_rate)
    else:
        raise ValueError(f"unknown variant: {variant!r}")

    if include_hamiltonian:
        total = total + hamiltonian_superoperator(
            hamiltonian_dressed(params, space))

    return Liouvillian(
        matrix=_pruned(total),
        variant=variant,
        mode=mode,
        space=space,
        include_hamiltonian=include_hamiltonian,
        rates=rates,
    )


def expand_dressed_dissipator(
    params: SystemParams, space: SpaceSpec
) -> tuple[sp.csr_matrix, sp.csr_matrix, sp.csr_matrix]:
    """Exact split of the bare dissipator D[b] around the dressed jump.

    Writing b = B + β0 N̂_c with B = b − β0 N̂_c,

        D[b] = D[B] + β0² D[N̂_c] + residual,

    where the residual collects the cross pieces B ρ (β0N̂_c) + (β0N̂_c) ρ B†
    − ½{(β0N̂_c) B + B† (β0N̂_c), ρ}. The first two parts are the ones kept by
    the secular approximation behind the dressed equations; the residual is
    what that approximation drops. Returns (main, dephasing, residual); their
    sum equals dissipator(b) identically.
    """
    beta0 = params.beta0
    b = _sparse(mech_op(destroy(space.dim_mech), space))
    y = beta0 * _sparse(cavity_op(number(space.dim_cavity), space))
    big_b = (b - y).tocsr()
    main = dissipator(big_b)
    dephasing = dissipator(y)
    bd = big_b.conj().T.tocsr()
    anti = (y @ big_b + bd @ y).tocsr()
    residual = _pruned(
        sandwich(big_b, y) + sandwich(y, bd) - 0.5 * (spre(anti) + spost(anti))
    )
    return main, dephasing, residual
