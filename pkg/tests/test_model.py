import numpy as np
import pytest

from sqom.fock import SpaceSpec, polaron_unitary
from sqom.model import (
    OMEGA_M,
    SystemParams,
    dressed_energy,
    dressed_state,
    hamiltonian_dressed,
    hamiltonian_lab,
)


def test_beta0_is_coupling_over_mechanical_frequency():
    params = SystemParams(delta=0.0, g0=0.8, kappa=0.05, gamma_m=0.01)
    assert params.beta0 == 0.8 / OMEGA_M


def test_negative_rates_rejected():
    with pytest.raises(ValueError):
        SystemParams(delta=0.0, g0=0.5, kappa=-0.1, gamma_m=0.0)
    with pytest.raises(ValueError):
        SystemParams(delta=0.0, g0=0.5, kappa=0.1, gamma_m=-1.0)


def test_lab_hamiltonian_is_hermitian_with_drive():
    params = SystemParams(delta=0.3, g0=0.8, kappa=0.05, gamma_m=0.01,
                          drive=0.7)
    h = hamiltonian_lab(params, SpaceSpec(dim_cavity=4, dim_mech=6))
    assert np.allclose(h, h.conj().T, atol=1e-14)


def test_drive_couples_adjacent_photon_numbers():
    params = SystemParams(delta=0.0, g0=0.0, kappa=0.0, gamma_m=0.0, drive=0.7)
    space = SpaceSpec(dim_cavity=3, dim_mech=2)
    h = hamiltonian_lab(params, space)
    # <1,0| i E (a† - a) |0,0> = i E
    assert h[1 * 2 + 0, 0] == pytest.approx(1j * 0.7, abs=1e-14)
    assert h[0, 1 * 2 + 0] == pytest.approx(-1j * 0.7, abs=1e-14)


def test_radiation_pressure_term_sign():
    params = SystemParams(delta=0.0, g0=0.6, kappa=0.0, gamma_m=0.0)
    space = SpaceSpec(dim_cavity=3, dim_mech=3)
    h = hamiltonian_lab(params, space)
    # <n, m+1| H |n, m> = -g0 n sqrt(m+1)
    assert h[2 * 3 + 1, 2 * 3 + 0] == pytest.approx(-0.6 * 2.0, abs=1e-14)


def test_dressed_hamiltonian_is_diagonal_with_level_formula():
    params = SystemParams(delta=0.3, g0=0.8, kappa=0.05, gamma_m=0.01)
    space = SpaceSpec(dim_cavity=4, dim_mech=5)
    h = hamiltonian_dressed(params, space)
    assert np.count_nonzero(h - np.diag(np.diag(h))) == 0
    for n in range(space.dim_cavity):
        for m in range(space.dim_mech):
            idx = n * space.dim_mech + m
            assert h[idx, idx].real == pytest.approx(
                -0.3 * n + 1.0 * m - 0.64 * n * n, abs=1e-12)
            assert h[idx, idx].real == pytest.approx(
                dressed_energy(params, n, m), abs=1e-12)


def test_dressed_energy_spot_value():
    params = SystemParams(delta=0.3, g0=0.8, kappa=0.05, gamma_m=0.01)
    # -0.3*2 + 1 - 0.64*4 = -2.16
    assert dressed_energy(params, 2, 1) == pytest.approx(-2.16, abs=1e-12)


def test_dressed_frame_rejects_drive():
    params = SystemParams(delta=0.0, g0=0.5, kappa=0.0, gamma_m=0.0, drive=0.2)
    space = SpaceSpec(dim_cavity=3, dim_mech=3)
    with pytest.raises(ValueError, match="drive"):
        hamiltonian_dressed(params, space)
    with pytest.raises(ValueError, match="drive"):
        dressed_state(params, space, 0, 0)


def test_polaron_similarity_on_mechanically_low_block():
    # U† H_lab U equals the diagonal dressed form away from the mechanical
    # truncation edge; the displaced ladder only breaks near the top levels.
    params = SystemParams(delta=0.2, g0=0.4, kappa=0.0, gamma_m=0.0)
    space = SpaceSpec(dim_cavity=3, dim_mech=30)
    u = polaron_unitary(params.beta0, space)
    transformed = u.conj().T @ hamiltonian_lab(params, space) @ u
    dressed = hamiltonian_dressed(params, space)
    low = [n * space.dim_mech + m for n in range(3) for m in range(10)]
    defect = np.max(np.abs((transformed - dressed)[np.ix_(low, low)]))
    assert defect < 1e-9


def test_dressed_states_are_lab_eigenvectors():
    params = SystemParams(delta=0.0, g0=0.5, kappa=0.0, gamma_m=0.0)
    space = SpaceSpec(dim_cavity=3, dim_mech=40)
    h = hamiltonian_lab(params, space)
    for n in range(3):
        for m in range(3):
            ket = dressed_state(params, space, n, m)
            assert abs(np.linalg.norm(ket) - 1.0) < 1e-12
            resid = np.linalg.norm(h @ ket - dressed_energy(params, n, m) * ket)
            assert resid < 1e-10


def test_dressed_state_zero_coupling_is_product_state():
    params = SystemParams(delta=0.1, g0=0.0, kappa=0.0, gamma_m=0.0)
    space = SpaceSpec(dim_cavity=3, dim_mech=4)
    ket = dressed_state(params, space, 2, 1)
    expected = np.zeros(space.dim, dtype=complex)
    expected[2 * 4 + 1] = 1.0
    assert np.allclose(ket, expected, atol=1e-14)
