"""System parameters and Hamiltonians for the single-cavity optomechanical model.

All frequencies are in units of the mechanical frequency, which is pinned to 1,
so the radiation-pressure coupling g0 is dimensionless. The lab-frame
Hamiltonian (rotating at the drive frequency, detuning delta) is

    H = -delta a†a + b†b - g0 a†a (b + b†) + i drive (a† - a),

with drive real. A photon-number-conditioned mechanical displacement by g0/ω_m
diagonalizes the undriven H into -delta a†a + b†b - g0² (a†a)², the dressed
frame used by the dressed-basis master equations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import (
    SpaceSpec,
    cavity_op,
    create,
    destroy,
    mech_op,
    number,
    polaron_unitary,
    product_ket,
)

OMEGA_M = 1.0  # mechanical frequency fixes the unit system


@dataclass(frozen=True)
class SystemParams:
    """Coherent (Hamiltonian) parameters, in units of the mechanical frequency.

    delta    : cavity detuning (positive means the drive is blue of the cavity)
    g0       : single-photon radiation-pressure coupling
    kappa    : cavity energy decay rate
    gamma_m  : mechanical energy decay rate
    drive    : coherent drive amplitude; the dressed frame requires drive == 0
    """

    delta: float
    g0: float
    kappa: float
    gamma_m: float
    drive: float = 0.0

    def __post_init__(self) -> None:
        if self.kappa < 0 or self.gamma_m < 0:
            raise ValueError(
                f"decay rates must be >= 0, got kappa={self.kappa}, "
                f"gamma_m={self.gamma_m}"
            )

    @property
    def beta0(self) -> float:
        """Mechanical displacement per photon, g0/ω_m."""
        return self.g0 / OMEGA_M


def hamiltonian_lab(params: SystemParams, space: SpaceSpec) -> np.ndarray:
    """Lab-frame Hamiltonian on the composite space.

    -delta a†a + ω_m b†b - g0 a†a (b + b†) + i drive (a† - a).
    """
    a = destroy(space.dim_cavity)
    b = destroy(space.dim_mech)
    n_c = cavity_op(number(space.dim_cavity), space)
    h = (
        -params.delta * n_c
        + OMEGA_M * mech_op(number(space.dim_mech), space)
        - params.g0 * cavity_op(number(space.dim_cavity), space)
        @ mech_op(b + b.conj().T, space)
    )
    if params.drive != 0.0:
        h = h + 1j * params.drive * (cavity_op(a.conj().T, space)
                                     - cavity_op(a, space))
    return h


def hamiltonian_dressed(params: SystemParams, space: SpaceSpec) -> np.ndarray:
    """Dressed-frame Hamiltonian -delta a†a + ω_m b†b - (g0²/ω_m) (a†a)².

    Diagonal in the product number basis. Only defined for the undriven model:
    the displacement that removes the radiation-pressure term does not commute
    with a linear drive, so drive != 0 raises.
    """
    if params.drive != 0.0:
        raise ValueError(
            "dressed frame is only defined for drive == 0; the conditional "
            "displacement does not commute with a linear cavity drive"
        )
    n_c = cavity_op(number(space.dim_cavity), space)
    n_m = mech_op(number(space.dim_mech), space)
    return -params.delta * n_c + OMEGA_M * n_m - (params.g0 ** 2 / OMEGA_M) * n_c @ n_c


def dressed_energy(params: SystemParams, n_cavity: int, n_mech: int) -> float:
    """Eigenvalue of the undriven Hamiltonian on the dressed level (n, m)."""
    return (
        -params.delta * n_cavity
        + OMEGA_M * n_mech
        - (params.g0 ** 2 / OMEGA_M) * n_cavity ** 2
    )


def dressed_state(
    params: SystemParams, space: SpaceSpec, n_cavity: int, n_mech: int
) -> np.ndarray:
    """Eigenvector of the undriven lab Hamiltonian labelled by (n, m).

    The product state |n, m> displaced mechanically by n·β0: the image of
    |n, m> under the conditional displacement unitary.
    """
    if params.drive != 0.0:
        raise ValueError(
            "dressed states are eigenvectors of the undriven Hamiltonian "
            "only; set drive == 0"
        )
    u = polaron_unitary(params.beta0, space)
    return u @ product_ket(space, n_cavity, n_mech)
