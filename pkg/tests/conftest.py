"""Shared helpers: random states, Haar unitaries, a loop-based trace oracle."""

from __future__ import annotations

import numpy as np
import pytest

from qcloner import DensityOperator


def random_density_operator(rng: np.random.Generator, n_qubits: int, rank: int | None = None) -> DensityOperator:
    """Wishart-style random mixed state, full rank unless ``rank`` is given."""
    dim = 2 ** n_qubits
    cols = rank if rank is not None else dim + 2
    g = rng.standard_normal((dim, cols)) + 1j * rng.standard_normal((dim, cols))
    m = g @ g.conj().T
    return DensityOperator.from_matrix(m / np.real(np.trace(m)))


def haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Ginibre matrix."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def naive_partial_trace(matrix: np.ndarray, n_qubits: int, keep) -> np.ndarray:
    """Independent partial-trace oracle: explicit loop over bit patterns.

    Qubit 1 is the most significant tensor factor; the output orders its
    factors as listed in ``keep``.
    """
    keep = list(keep)
    traced = [q for q in range(1, n_qubits + 1) if q not in keep]
    dim_out = 2 ** len(keep)
    out = np.zeros((dim_out, dim_out), dtype=complex)

    def bit(index: int, qubit: int) -> int:
        return (index >> (n_qubits - qubit)) & 1

    for row in range(2 ** n_qubits):
        for col in range(2 ** n_qubits):
            if any(bit(row, q) != bit(col, q) for q in traced):
                continue
            r = c = 0
            for q in keep:
                r = (r << 1) | bit(row, q)
                c = (c << 1) | bit(col, q)
            out[r, c] += matrix[row, col]
    return out


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260817)
