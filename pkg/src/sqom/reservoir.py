"""Reservoir occupations and squeezed-bath coefficients.

A squeezed thermal reservoir at thermal occupation n_th, squeeze amplitude r,
and squeeze phase theta drives a mode with effective occupation

    N_eff = n_th (cosh²r + sinh²r) + sinh²r

and phase-sensitive correlation

    M_eff = -cosh(r) sinh(r) e^{iθ} (2 n_th + 1),

which satisfy |M_eff|² - N_eff (N_eff + 1) = -n_th (n_th + 1) for every (r, θ),
saturating the positivity bound |M|² <= N (N + 1) exactly at n_th = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ReservoirSpec:
    """Mechanical-bath state: thermal occupation plus optional squeezing.

    n_th       : thermal occupation at the mechanical frequency
    r          : squeeze amplitude (r = 0 means a plain thermal bath)
    theta      : squeeze phase
    kT_over_wm : temperature in mechanical-frequency units, used only by the
                 high-temperature dephasing rates; defaults to n_th, which is
                 the leading behaviour of the Bose function in that regime
    """

    n_th: float
    r: float = 0.0
    theta: float = 0.0
    kT_over_wm: float | None = None

    def __post_init__(self) -> None:
        if self.n_th < 0:
            raise ValueError(f"thermal occupation must be >= 0, got {self.n_th}")
        if self.r < 0:
            raise ValueError(f"squeeze amplitude must be >= 0, got {self.r}")

    @property
    def temperature(self) -> float:
        return self.n_th if self.kT_over_wm is None else self.kT_over_wm

    @property
    def is_squeezed(self) -> bool:
        return self.r != 0.0


@dataclass(frozen=True)
class SqueezedCoefficients:
    """Occupation and correlation entering a squeezed-bath dissipator."""

    n_eff: float
    m_eff: complex


def squeezed_coefficients(res: ReservoirSpec) -> SqueezedCoefficients:
    """Effective (N, M) pair for the mechanical bath of a ReservoirSpec."""
    ch, sh = math.cosh(res.r), math.sinh(res.r)
    n_eff = res.n_th * (ch * ch + sh * sh) + sh * sh
    m_eff = -ch * sh * complex(math.cos(res.theta), math.sin(res.theta)) * (
        2.0 * res.n_th + 1.0
    )
    return SqueezedCoefficients(n_eff=n_eff, m_eff=m_eff)


def cavity_squeezed_coefficients(res: ReservoirSpec) -> SqueezedCoefficients:
    """(N, M) pair seen by the cavity when the squeezed input also feeds it.

    The optical bath carries no thermal photons, so only the squeeze amplitude
    contributes: N = sinh²r, M = -cosh(r) sinh(r) e^{iθ}.
    """
    ch, sh = math.cosh(res.r), math.sinh(res.r)
    return SqueezedCoefficients(
        n_eff=sh * sh,
        m_eff=-ch * sh * complex(math.cos(res.theta), math.sin(res.theta)),
    )


def squeeze_dephasing_factor(r: float, theta: float) -> float:
    """Phase-sensitive enhancement cosh²r + sinh²r + 2 cosh(r) sinh(r) cos(θ).

    Equals e^{2r} at θ = 0 and e^{-2r} at θ = π: squeezing the quadrature that
    drives the number-conditioned dephasing suppresses it exponentially.
    """
    ch, sh = math.cosh(r), math.sinh(r)
    return ch * ch + sh * sh + 2.0 * ch * sh * math.cos(theta)


def dephasing_rate_thermal(gamma_m: float, n_th: float, beta0: float) -> float:
    """Photon-number dephasing rate γ (2 n_th + 1) β0² of the dressed equations."""
    return gamma_m * (2.0 * n_th + 1.0) * beta0 ** 2


def dephasing_rate_high_t(
    gamma_m: float, res: ReservoirSpec, beta0: float
) -> float:
    """High-temperature dephasing rate 4 γ (kT/ω_m) F(r, θ) β0².

    F is the squeeze_dephasing_factor; for a plain thermal bath F = 1 and the
    rate is the kT/ω_m >> 1 limit of the 2 n_th + 1 form.
    """
    return (
        4.0
        * gamma_m
        * res.temperature
        * squeeze_dephasing_factor(res.r, res.theta)
        * beta0 ** 2
    )


def sme_extra_rates(
    gamma_m: float, res: ReservoirSpec, beta0: float
) -> tuple[float, float]:
    """Sandwich and dephasing rates of the squeezed standard equation in the
    dressed basis, beyond the dressed-jump terms.

    Returns (sandwich_rate, dephasing_rate) with

        sandwich_rate  = 2 γ cosh(r) sinh(r) cos(θ) (2 n_th + 1) β0²
        dephasing_rate = γ (2 N_eff + 1) β0²

    where the sandwich term enters as rate · N̂_c ρ N̂_c and the dephasing term
    as a standard dissipator in N̂_c. Their combination

        dephasing_rate · D[N̂_c] + sandwich_rate · N̂_c ρ N̂_c

    completes (with the matching anticommutator) to γ F(r, θ) (2 n_th + 1) β0²
    times a valid dephasing channel, since 2 N_eff + 1 = (2 n_th + 1)(cosh²r +
    sinh²r) and F adds the 2 cosh sinh cos(θ) cross piece.
    """
    ch, sh = math.cosh(res.r), math.sinh(res.r)
    sandwich = 2.0 * gamma_m * ch * sh * math.cos(res.theta) * (
        2.0 * res.n_th + 1.0
    ) * beta0 ** 2
    n_eff = squeezed_coefficients(res).n_eff
    dephasing = gamma_m * (2.0 * n_eff + 1.0) * beta0 ** 2
    return sandwich, dephasing
