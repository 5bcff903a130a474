"""Entanglement measures: concurrence, Werner fits, tangle, monogamy gap."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuits import BellFamily, bell_state
from .qstate import PAULI_Y, DensityOperator, partial_trace

__all__ = [
    "WernerFit",
    "CkwReport",
    "wootters_tilde",
    "concurrence",
    "one_tangle",
    "ckw_saturation",
    "werner_fit",
]

_SIGMA_Y_PAIR = np.kron(PAULI_Y, PAULI_Y)

PURITY_ATOL = 1e-9
SATURATION_FLOOR = -1e-9
RANK_TOLERANCE = 1e-12  # eigenvalues of a unit-trace operator below this are rounding noise


@dataclass(frozen=True)
class WernerFit:
    """Best Bell-diagonal-weight description gamma*|B><B| + (1-gamma)/4 * I.

    ``gamma`` comes from the Bell-state overlap, which is exact whenever
    the state really is of Werner form; ``residual`` is the Frobenius
    distance to the reconstructed form and reports any deviation.
    """

    gamma: float
    bell_family: BellFamily
    residual: float


@dataclass(frozen=True)
class CkwReport:
    """Monogamy bookkeeping for one qubit of a pure multiqubit state.

    ``saturation`` is the one-tangle minus the sum of squared pairwise
    concurrences; it is non-negative for pure global states and zero
    when bipartite entanglement exhausts the tangle.
    """

    qubit: int
    tau: float
    sum_sq_concurrence: float
    saturation: float


def wootters_tilde(rho: DensityOperator) -> np.ndarray:
    """Spin-flipped state (sigma_y x sigma_y) rho^* (sigma_y x sigma_y).

    The conjugation is elementwise in the computational product basis.
    """
    if rho.n_qubits != 2:
        raise ValueError(f"spin flip is defined for 2 qubits, got {rho.n_qubits}")
    return _SIGMA_Y_PAIR @ rho.matrix.conj() @ _SIGMA_Y_PAIR


def concurrence(rho: DensityOperator) -> float:
    """Two-qubit concurrence max(0, l1 - l2 - l3 - l4).

    The l_i are the decreasing eigenvalues of sqrt(sqrt(rho) rho~ sqrt(rho)).
    They are computed here as the singular values of Psi^T (sy x sy) Psi
    for the factorization rho = Psi Psi^dag restricted to the numerical
    rank; the two spectra agree exactly, but the factored form never takes
    a square root of a near-zero eigenvalue, which on rank-deficient
    states (every post-measurement marginal) would turn 1e-16 rounding
    noise into 1e-8 errors. The result is clipped to [0, 1].
    """
    if rho.n_qubits != 2:
        raise ValueError(f"concurrence is defined for 2 qubits, got {rho.n_qubits}")
    eigenvalues, vectors = np.linalg.eigh(rho.matrix)
    keep = eigenvalues > RANK_TOLERANCE
    factor = vectors[:, keep] * np.sqrt(eigenvalues[keep])
    lams = np.linalg.svd(factor.T @ _SIGMA_Y_PAIR @ factor, compute_uv=False)
    return float(min(1.0, max(0.0, 2.0 * lams[0] - lams.sum())))


def one_tangle(rho: DensityOperator) -> float:
    """One-tangle 4*det(rho) of a single-qubit state, clipped to [0, 1]."""
    if rho.n_qubits != 1:
        raise ValueError(f"one-tangle is defined for 1 qubit, got {rho.n_qubits}")
    tau = 4.0 * float(np.real(np.linalg.det(rho.matrix)))
    return min(1.0, max(0.0, tau))


def ckw_saturation(state: DensityOperator, k: int) -> CkwReport:
    """Monogamy gap s = tau_k - sum_{l != k} C(k,l)^2 for a pure global state."""
    if not 1 <= k <= state.n_qubits:
        raise ValueError(f"qubit {k} outside register 1..{state.n_qubits}")
    purity = state.purity()
    if purity < 1.0 - PURITY_ATOL:
        raise ValueError(
            f"monogamy gap needs a pure global state; Tr(rho^2) = {purity:.6f}"
        )
    tau = one_tangle(partial_trace(state, [k]))
    sum_sq = 0.0
    for other in range(1, state.n_qubits + 1):
        if other == k:
            continue
        sum_sq += concurrence(partial_trace(state, [k, other])) ** 2
    saturation = tau - sum_sq
    if saturation < SATURATION_FLOOR:
        raise ValueError(
            f"monogamy gap {saturation:.3e} below the {SATURATION_FLOOR} noise floor; "
            "the global state is likely not pure"
        )
    return CkwReport(qubit=k, tau=tau, sum_sq_concurrence=sum_sq, saturation=saturation)


def werner_fit(rho: DensityOperator, family: BellFamily = BellFamily.PHI_PLUS) -> WernerFit:
    """Fit gamma from the Bell overlap and report the Frobenius residual."""
    if rho.n_qubits != 2:
        raise ValueError(f"Werner fit is defined for 2 qubits, got {rho.n_qubits}")
    bell = bell_state(family).amplitudes
    overlap = float(np.real(bell.conj() @ rho.matrix @ bell))
    gamma = (4.0 * overlap - 1.0) / 3.0
    gamma = min(1.0, max(-1.0 / 3.0, gamma))
    reconstructed = gamma * np.outer(bell, bell.conj()) + (1.0 - gamma) / 4.0 * np.eye(4)
    residual = float(np.linalg.norm(rho.matrix - reconstructed))
    return WernerFit(gamma=gamma, bell_family=family, residual=residual)
