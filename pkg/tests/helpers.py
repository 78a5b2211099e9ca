"""Shared numeric helpers for the test suite.

Reference implementations here are deliberately naive (dense products, index
loops) so they stay independent of the vectorized code under test.
"""

import json

import numpy as np


def random_density_matrix(rng, dim):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = m @ m.conj().T
    return rho / np.trace(rho).real


def random_operator(rng, dim):
    return rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))


def dissipator_action(o, rho):
    """Direct dense evaluation of D[o]rho = o rho o† - {o†o, rho}/2."""
    od = o.conj().T
    odo = od @ o
    return o @ rho @ od - 0.5 * (odo @ rho + rho @ odo)


def apply_superop(matrix, rho):
    """Act a column-stacked superoperator on a density matrix."""
    dim = rho.shape[0]
    vec = np.asarray(rho, dtype=complex).reshape(-1, order="F")
    out = matrix @ vec
    return np.asarray(out).reshape(dim, dim, order="F")


def load_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
