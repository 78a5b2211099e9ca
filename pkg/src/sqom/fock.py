"""Truncated Fock-space operator algebra for a cavity ⊗ mechanical system.

Operators are dense complex numpy arrays; the composite ordering is fixed as
cavity ⊗ mechanical, i.e. a full-space matrix is kron(cavity_part, mech_part).
Truncation semantics follow the usual finite-ladder convention: destroy(d) is
exact on |0..d-1> except that the top level has no level above it, so identities
that move population near the edge hold only on interior levels.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm


@dataclass(frozen=True)
class SpaceSpec:
    """Truncation of the composite Hilbert space (cavity ⊗ mechanical)."""

    dim_cavity: int
    dim_mech: int

    def __post_init__(self) -> None:
        if self.dim_cavity < 2 or self.dim_mech < 2:
            raise ValueError(
                f"both dimensions must be >= 2, got "
                f"({self.dim_cavity}, {self.dim_mech})"
            )

    @property
    def dim(self) -> int:
        return self.dim_cavity * self.dim_mech


def destroy(dim: int) -> np.ndarray:
    """Bosonic annihilation operator on a dim-level ladder.

    Entries a[n-1, n] = sqrt(n); everything else zero.
    """
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    a = np.zeros((dim, dim), dtype=complex)
    ns = np.arange(1, dim)
    a[ns - 1, ns] = np.sqrt(ns)
    return a


def create(dim: int) -> np.ndarray:
    """Bosonic creation operator, the adjoint of destroy(dim)."""
    return destroy(dim).conj().T


def number(dim: int) -> np.ndarray:
    """Number operator diag(0, 1, ..., dim-1)."""
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    return np.diag(np.arange(dim, dtype=float)).astype(complex)


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex)


def tensor(cavity_part: np.ndarray, mech_part: np.ndarray) -> np.ndarray:
    """Composite operator kron(cavity_part, mech_part)."""
    return np.kron(np.asarray(cavity_part, dtype=complex),
                   np.asarray(mech_part, dtype=complex))


def cavity_op(op: np.ndarray, space: SpaceSpec) -> np.ndarray:
    """Embed a cavity operator into the composite space."""
    if op.shape != (space.dim_cavity, space.dim_cavity):
        raise ValueError(
            f"cavity operator shape {op.shape} does not match "
            f"dim_cavity={space.dim_cavity}"
        )
    return tensor(op, identity(space.dim_mech))


def mech_op(op: np.ndarray, space: SpaceSpec) -> np.ndarray:
    """Embed a mechanical operator into the composite space."""
    if op.shape != (space.dim_mech, space.dim_mech):
        raise ValueError(
            f"mechanical operator shape {op.shape} does not match "
            f"dim_mech={space.dim_mech}"
        )
    return tensor(identity(space.dim_cavity), op)


def fock_ket(dim: int, n: int) -> np.ndarray:
    """Number state |n> as a length-dim complex vector."""
    if not 0 <= n < dim:
        raise ValueError(f"level {n} outside truncation 0..{dim - 1}")
    ket = np.zeros(dim, dtype=complex)
    ket[n] = 1.0
    return ket


def product_ket(space: SpaceSpec, n_cavity: int, n_mech: int) -> np.ndarray:
    """Product number state |n_cavity> ⊗ |n_mech>."""
    return np.kron(fock_ket(space.dim_cavity, n_cavity),
                   fock_ket(space.dim_mech, n_mech))


def displacement(dim: int, alpha: complex) -> np.ndarray:
    """Displacement operator exp(alpha a† - conj(alpha) a) on the truncated ladder.

    The generator is truncated before exponentiation, so the result is exactly
    unitary but only approximates the infinite-dimensional operator; a warning
    is raised once |alpha|^2 exceeds dim/4, where edge effects become visible.
    """
    alpha = complex(alpha)
    if abs(alpha) ** 2 > dim / 4:
        warnings.warn(
            f"displacement amplitude |alpha|^2 = {abs(alpha)**2:.3g} is large for "
            f"dim = {dim}; truncation error may be significant",
            stacklevel=2,
        )
    a = destroy(dim)
    return expm(alpha * a.conj().T - np.conj(alpha) * a)


def polaron_unitary(beta0: float, space: SpaceSpec) -> np.ndarray:
    """Photon-number-conditioned mechanical displacement exp(β0 N̂_c ⊗ (b̂†−b̂)).

    The generator is block diagonal in the cavity number n, so the exponential
    is assembled exactly as a direct sum of mechanical displacements by n·β0.
    Exactly unitary for any truncation (anti-Hermitian generator).
    """
    blocks = [displacement(space.dim_mech, n * beta0)
              for n in range(space.dim_cavity)]
    u = np.zeros((space.dim, space.dim), dtype=complex)
    d = space.dim_mech
    for n, block in enumerate(blocks):
        u[n * d:(n + 1) * d, n * d:(n + 1) * d] = block
    return u


def partial_trace_mech(rho: np.ndarray, space: SpaceSpec) -> np.ndarray:
    """Trace out the mechanical mode, returning the cavity reduced matrix."""
    d_c, d_m = space.dim_cavity, space.dim_mech
    if rho.shape != (space.dim, space.dim):
        raise ValueError(
            f"state shape {rho.shape} does not match space dim {space.dim}"
        )
    return np.einsum("iuju->ij", rho.reshape(d_c, d_m, d_c, d_m))


def as_density_matrix(ket: np.ndarray) -> np.ndarray:
    """Rank-one projector |ket><ket|."""
    ket = np.asarray(ket, dtype=complex)
    return np.outer(ket, ket.conj())


def thermal_state(dim: int, n_mean: float) -> np.ndarray:
    """Thermal (geometric) state with mean occupation n_mean, renormalized.

    The geometric weights are renormalized over the truncated ladder, so the
    realized mean is slightly below n_mean; callers should size dim so the
    discarded tail weight is negligible.
    """
    if n_mean < 0:
        raise ValueError(f"mean occupation must be >= 0, got {n_mean}")
    if n_mean == 0:
        return as_density_matrix(fock_ket(dim, 0))
    ratio = n_mean / (1.0 + n_mean)
    weights = ratio ** np.arange(dim)
    weights /= weights.sum()
    return np.diag(weights).astype(complex)


def validate_ket(ket: np.ndarray, *, atol: float = 1e-12) -> np.ndarray:
    """Check normalization of a state vector; returns the input unchanged."""
    ket = np.asarray(ket, dtype=complex)
    norm = float(np.linalg.norm(ket))
    if abs(norm - 1.0) > atol:
        raise ValueError(f"ket norm {norm} deviates from 1 beyond {atol}")
    return ket


def validate_density_matrix(
    rho: np.ndarray,
    *,
    herm_tol: float = 1e-12,
    trace_tol: float = 1e-12,
    eig_floor: float = -1e-10,
) -> np.ndarray:
    """Check Hermiticity, unit trace, and positivity of a density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError(f"density matrix must be square, got shape {rho.shape}")
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    if herm > herm_tol:
        raise ValueError(f"Hermiticity defect {herm:.3e} beyond {herm_tol}")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > trace_tol:
        raise ValueError(f"trace {tr} deviates from 1 beyond {trace_tol}")
    min_eig = float(np.min(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))))
    if min_eig < eig_floor:
        raise ValueError(f"minimum eigenvalue {min_eig:.3e} below {eig_floor}")
    return rho
