"""Concurrence, Werner fits, one-tangle and the monogamy gap."""

from __future__ import annotations

import numpy as np
import pytest

from qcloner import (
    BellFamily,
    DensityOperator,
    PureState,
    apply_unitary,
    bell_state,
    ckw_saturation,
    concurrence,
    ghz_state,
    kron,
    matrix_sqrt_psd,
    one_tangle,
    partial_trace,
    werner_fit,
)
from qcloner.entanglement import wootters_tilde
from qcloner.qstate import KET_PLUS

from conftest import haar_unitary, random_density_operator


def sandwich_concurrence(rho: DensityOperator) -> float:
    """Reference route: eigenvalues of sqrt(sqrt(rho) rho~ sqrt(rho)).

    Kept as an independent oracle for the production SVD route; accurate
    to ~1e-8 on rank-deficient states, machine precision on full rank.
    """
    root = matrix_sqrt_psd(rho.matrix)
    sandwich = root @ wootters_tilde(rho) @ root
    sandwich = 0.5 * (sandwich + sandwich.conj().T)
    lams = np.sqrt(np.clip(np.linalg.eigvalsh(sandwich), 0.0, None))[::-1]
    return max(0.0, lams[0] - lams[1] - lams[2] - lams[3])


def werner_state(gamma: float, family: BellFamily = BellFamily.PHI_PLUS) -> DensityOperator:
    bell = bell_state(family).amplitudes
    matrix = gamma * np.outer(bell, bell.conj()) + (1.0 - gamma) / 4.0 * np.eye(4)
    return DensityOperator(2, matrix)


def test_wootters_tilde_of_bell_state_is_itself():
    rho = bell_state(BellFamily.PHI_PLUS).density()
    assert np.allclose(wootters_tilde(rho), rho.matrix, atol=1e-12)


def test_wootters_tilde_requires_two_qubits():
    with pytest.raises(ValueError):
        wootters_tilde(DensityOperator.maximally_mixed(1))


def test_concurrence_of_bell_states_is_one():
    for family in BellFamily:
        assert concurrence(bell_state(family).density()) == pytest.approx(1.0, abs=1e-12)


def test_concurrence_of_product_state_is_zero():
    rho = PureState(2, kron(KET_PLUS, KET_PLUS)).density()
    assert concurrence(rho) == pytest.approx(0.0, abs=1e-12)
    assert concurrence(DensityOperator.maximally_mixed(2)) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("gamma", [0.0, 1.0 / 3.0, 0.5, 0.75, 1.0])
def test_concurrence_of_werner_state(gamma):
    expected = max(0.0, (3.0 * gamma - 1.0) / 2.0)
    assert concurrence(werner_state(gamma)) == pytest.approx(expected, abs=1e-12)


def test_concurrence_agrees_with_sandwich_route(rng):
    for _ in range(100):
        rho = random_density_operator(rng, 2)
        assert concurrence(rho) == pytest.approx(sandwich_concurrence(rho), abs=1e-11)


def test_concurrence_on_rank_deficient_states(rng):
    # rank-2 marginals of random pure 3-qubit states; the SVD route must
    # agree with the sandwich oracle despite its sqrt noise floor
    for _ in range(50):
        amps = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        psi = PureState(3, amps / np.linalg.norm(amps))
        rho = partial_trace(psi.density(), [1, 2])
        assert concurrence(rho) == pytest.approx(sandwich_concurrence(rho), abs=1e-7)


def test_concurrence_local_unitary_invariance(rng):
    for _ in range(50):
        rho = random_density_operator(rng, 2)
        u = kron(haar_unitary(rng, 2), haar_unitary(rng, 2))
        assert concurrence(apply_unitary(rho, u)) == pytest.approx(concurrence(rho), abs=1e-10)


def test_one_tangle_extremes():
    assert one_tangle(DensityOperator.maximally_mixed(1)) == pytest.approx(1.0, abs=1e-12)
    pure = PureState(1, np.array([1.0, 0.0])).density()
    assert one_tangle(pure) == pytest.approx(0.0, abs=1e-12)


def test_one_tangle_equals_squared_concurrence_for_pure_pairs(rng):
    # for a pure two-qubit state, 4 det(rho_1) = C^2
    for _ in range(20):
        amps = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        psi = PureState(2, amps / np.linalg.norm(amps))
        tau = one_tangle(partial_trace(psi.density(), [1]))
        assert tau == pytest.approx(concurrence(psi.density()) ** 2, abs=1e-10)


def test_ckw_on_ghz_state():
    # GHZ: every one-tangle is 1, every pairwise concurrence 0, gap 1
    state = ghz_state().density()
    for qubit in (1, 2, 3):
        report = ckw_saturation(state, qubit)
        assert report.tau == pytest.approx(1.0, abs=1e-12)
        assert report.sum_sq_concurrence == pytest.approx(0.0, abs=1e-12)
        assert report.saturation == pytest.approx(1.0, abs=1e-12)


def test_ckw_saturated_on_w_state():
    # W state: tau = 8/9 and two pairwise concurrences of 2/3 each
    amps = np.zeros(8)
    amps[[1, 2, 4]] = 1.0 / np.sqrt(3.0)
    state = PureState(3, amps).density()
    report = ckw_saturation(state, 1)
    assert report.tau == pytest.approx(8.0 / 9.0, abs=1e-12)
    assert report.saturation == pytest.approx(0.0, abs=1e-10)


def test_ckw_rejects_mixed_global_state():
    with pytest.raises(ValueError, match="pure"):
        ckw_saturation(DensityOperator.maximally_mixed(3), 1)


def test_ckw_rejects_out_of_range_qubit():
    with pytest.raises(ValueError, match="outside register"):
        ckw_saturation(ghz_state().density(), 4)


@pytest.mark.parametrize("gamma", [0.0, 0.2, 0.6, 1.0])
@pytest.mark.parametrize("family", list(BellFamily))
def test_werner_fit_recovers_gamma_exactly(gamma, family):
    fit = werner_fit(werner_state(gamma, family), family)
    assert fit.gamma == pytest.approx(gamma, abs=1e-12)
    assert fit.residual == pytest.approx(0.0, abs=1e-12)


def test_werner_fit_flags_non_werner_states():
    rho = PureState(2, np.array([0.8, 0.0, 0.0, 0.6])).density()
    fit = werner_fit(rho)
    assert fit.residual > 0.01


def test_werner_fit_requires_two_qubits():
    with pytest.raises(ValueError):
        werner_fit(DensityOperator.maximally_mixed(3))
