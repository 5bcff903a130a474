"""Closed-form output marginals, parameter sweeps, and the GHZ pipeline.

This module drives the circuit layer over parameter grids and checks it
against the analytic channel description of the cloner, so every curve
the CLI emits has an independent cross-check available.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuits import (
    BellFamily,
    InputStateSpec,
    clone_pair_member,
    run_bipartite,
    run_ghz,
)
from .entanglement import CkwReport, ckw_saturation, concurrence
from .qstate import DensityOperator, PureState, measure_projective, partial_trace

__all__ = [
    "SWEEP_PAIRS",
    "BRANCH_INDEPENDENCE_ATOL",
    "SweepResult",
    "GhzReport",
    "CkwScanPoint",
    "VerificationReport",
    "uniform_grid",
    "cloner_marginals_analytic",
    "werner_gamma_analytic",
    "bipartite_sweep",
    "ghz_pipeline",
    "ckw_scan",
    "random_qubit_state",
    "purify_to_pair",
    "verify_circuit_vs_analytic",
]

SWEEP_PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
BRANCH_INDEPENDENCE_ATOL = 1e-10
_VERIFY_ALPHA_POINTS = 21


def uniform_grid(points: int) -> np.ndarray:
    """Uniform grid on [0, 1] with the given number of points."""
    if points < 2:
        raise ValueError(f"need at least 2 grid points, got {points}")
    return np.linspace(0.0, 1.0, points)


@dataclass(frozen=True, eq=False)
class SweepResult:
    """Pairwise concurrence surfaces over an (alpha, c0) grid."""

    alpha_grid: np.ndarray
    c0_grid: np.ndarray
    family: BellFamily
    concurrence_surfaces: dict

    def __post_init__(self):
        shape = (len(self.alpha_grid), len(self.c0_grid))
        for pair in SWEEP_PAIRS:
            surface = self.concurrence_surfaces[pair]
            if surface.shape != shape:
                raise ValueError(f"surface for pair {pair} has shape {surface.shape}, expected {shape}")
            if surface.min() < 0.0 or surface.max() > 1.0:
                raise ValueError(f"surface for pair {pair} leaves [0, 1]")
        stray = float(np.max(self.concurrence_surfaces[(1, 4)]))
        if stray > 1e-12:
            raise ValueError(f"pair (1, 4) concurrence should vanish, found {stray:.3e}")


@dataclass(frozen=True)
class GhzReport:
    """Concurrence curves and monogamy reports for one cloning weight.

    curve_a: C(3,5) after the cloner        curve_b: C(4,5) after the cloner
    curve_c: C(1,2) after the first measurement
    curve_d: C(2,3) and curve_e: C(2,5) after the second measurement
    """

    alpha: float
    curve_a: float
    curve_b: float
    curve_c: float
    curve_d: float
    curve_e: float
    p_first_plus: float
    p_second_plus: float
    ckw_after_first: tuple[CkwReport, ...]
    ckw_after_second: tuple[CkwReport, ...]

    def __post_init__(self):
        for name in ("curve_a", "curve_b", "curve_c", "curve_d", "curve_e"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name}={value!r} outside [0, 1]")


@dataclass(frozen=True)
class CkwScanPoint:
    """Per-qubit monogamy reports after each measurement stage."""

    alpha: float
    after_first: tuple[CkwReport, ...]
    after_second: tuple[CkwReport, ...]


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of the circuit-versus-analytic marginal comparison."""

    n_samples: int
    seed: int
    tolerance: float
    alpha_points: int
    max_deviation: float
    passed: bool


def cloner_marginals_analytic(rho_in: DensityOperator, alpha: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Closed-form single-qubit output marginals on ports 2, 3 and 4.

    Port 2 keeps a beta-weighted share of the input, port 3 an
    alpha-weighted share, and port 4 mixes the transposed input with the
    identity; all three share the denominator alpha + beta^2 == beta + alpha^2.
    """
    if rho_in.n_qubits != 1:
        raise ValueError(f"expected a single-qubit input, got {rho_in.n_qubits} qubit(s)")
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha={alpha!r} outside [0, 1]")
    beta = 1.0 - alpha
    denom = alpha + beta ** 2
    eye = np.eye(2, dtype=complex)
    rho = rho_in.matrix
    rho2 = (beta / denom) * rho + (alpha ** 2 / (2.0 * denom)) * eye
    rho3 = (alpha / denom) * rho + (beta ** 2 / (2.0 * denom)) * eye
    rho4 = (alpha * beta / denom) * rho.T + ((alpha ** 2 + beta ** 2) / (2.0 * denom)) * eye
    return rho2, rho3, rho4


def werner_gamma_analytic(alpha: float, pair_class: str) -> float:
    """Werner weight of the output pairs for a maximally entangled input.

    ``original_side`` covers pairs (1,2) and (3,4) and carries beta/(alpha+beta^2),
    so it reaches gamma=1 in the no-cloning limit; ``clone_side`` covers
    pairs (1,3) and (2,4) and carries alpha/(alpha+beta^2).
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha={alpha!r} outside [0, 1]")
    beta = 1.0 - alpha
    denom = alpha + beta ** 2
    if pair_class == "original_side":
        return beta / denom
    if pair_class == "clone_side":
        return alpha / denom
    raise ValueError(f"unknown pair class {pair_class!r}")


def _pair_concurrence(state: DensityOperator, pair) -> float:
    return concurrence(partial_trace(state, pair))


def bipartite_sweep(alpha_grid, c0_grid, family: BellFamily) -> SweepResult:
    """Pairwise output concurrences over the full (alpha, c0) grid."""
    alpha_grid = np.asarray(alpha_grid, dtype=float)
    c0_grid = np.asarray(c0_grid, dtype=float)
    for grid, name in ((alpha_grid, "alpha"), (c0_grid, "c0")):
        if grid.size and (grid.min() < 0.0 or grid.max() > 1.0):
            raise ValueError(f"{name} grid leaves [0, 1]")
    surfaces = {pair: np.zeros((alpha_grid.size, c0_grid.size)) for pair in SWEEP_PAIRS}
    for i, alpha in enumerate(alpha_grid):
        for j, c0 in enumerate(c0_grid):
            state = run_bipartite(float(alpha), InputStateSpec(family, float(c0)))
            for pair in SWEEP_PAIRS:
                surfaces[pair][i, j] = _pair_concurrence(state, pair)
    return SweepResult(alpha_grid, c0_grid, family, surfaces)


def _branch_values(records, pair) -> dict:
    """Concurrence of ``pair`` on every live branch, keyed by outcome."""
    values = {}
    for record in records:
        if record.post_state is None:
            continue
        values[record.outcome] = _pair_concurrence(record.post_state, pair)
    return values


def _assert_branch_independent(values: dict, label: str) -> None:
    if len(values) == 2 and abs(values["+"] - values["-"]) > BRANCH_INDEPENDENCE_ATOL:
        raise ValueError(
            f"{label} differs across measurement branches: "
            f"{values['+']:.12f} vs {values['-']:.12f}"
        )


def _select_branch(records, outcome_policy: str):
    for record in records:
        if record.outcome == outcome_policy:
            if record.post_state is None:
                raise ValueError(f"selected branch {outcome_policy!r} has zero probability")
            return record
    raise ValueError(f"unknown outcome policy {outcome_policy!r}; use '+' or '-'")


def ghz_pipeline(
    alpha: float,
    first_measured: int = 4,
    second_measured: int = 1,
    outcome_policy: str = "+",
) -> GhzReport:
    """Run the GHZ cloning scenario through both measurements.

    Measures ``first_measured`` (the clone carrier by default) and then
    ``second_measured`` in the |+-> basis, recording the concurrence
    curves and per-qubit monogamy reports at each stage. Both branches
    of each measurement are evaluated and every recorded concurrence is
    required to be branch-independent before ``outcome_policy`` picks
    the branch the pipeline continues with.
    """
    if first_measured == second_measured:
        raise ValueError("first and second measured qubits must differ")
    state = run_ghz(alpha)
    curve_a = _pair_concurrence(state, (3, 5))
    curve_b = _pair_concurrence(state, (4, 5))

    first_records = measure_projective(state, first_measured)
    c12 = _branch_values(first_records, (1, 2))
    _assert_branch_independent(c12, "C(1,2) after the first measurement")
    first_branch = _select_branch(first_records, outcome_policy)
    p_first_plus = first_records[0].probability
    curve_c = c12[first_branch.outcome]
    ckw_after_first = tuple(
        ckw_saturation(first_branch.post_state, q) for q in range(1, state.n_qubits + 1)
    )

    second_records = measure_projective(first_branch.post_state, second_measured)
    c23 = _branch_values(second_records, (2, 3))
    c25 = _branch_values(second_records, (2, 5))
    _assert_branch_independent(c23, "C(2,3) after the second measurement")
    _assert_branch_independent(c25, "C(2,5) after the second measurement")
    second_branch = _select_branch(second_records, outcome_policy)
    p_second_plus = second_records[0].probability
    curve_d = c23[second_branch.outcome]
    curve_e = c25[second_branch.outcome]
    ckw_after_second = tuple(
        ckw_saturation(second_branch.post_state, q) for q in range(1, state.n_qubits + 1)
    )

    return GhzReport(
        alpha=float(alpha),
        curve_a=curve_a,
        curve_b=curve_b,
        curve_c=curve_c,
        curve_d=curve_d,
        curve_e=curve_e,
        p_first_plus=p_first_plus,
        p_second_plus=p_second_plus,
        ckw_after_first=ckw_after_first,
        ckw_after_second=ckw_after_second,
    )


def ckw_scan(alpha_grid) -> list[CkwScanPoint]:
    """Monogamy reports for every qubit after each measurement, per alpha."""
    alpha_grid = np.asarray(alpha_grid, dtype=float)
    if alpha_grid.size and (alpha_grid.min() < 0.0 or alpha_grid.max() > 1.0):
        raise ValueError("alpha grid leaves [0, 1]")
    points = []
    for alpha in alpha_grid:
        report = ghz_pipeline(float(alpha))
        points.append(
            CkwScanPoint(
                alpha=float(alpha),
                after_first=report.ckw_after_first,
                after_second=report.ckw_after_second,
            )
        )
    return points


def random_qubit_state(rng: np.random.Generator) -> DensityOperator:
    """Random mixed qubit: trace half of a Gaussian-random two-qubit pure state."""
    amplitudes = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    amplitudes /= np.linalg.norm(amplitudes)
    pair = PureState(2, amplitudes)
    return partial_trace(pair.density(), [2])


def purify_to_pair(rho: DensityOperator) -> PureState:
    """Two-qubit purification carrying ``rho`` on its second qubit."""
    if rho.n_qubits != 1:
        raise ValueError(f"expected a single-qubit state, got {rho.n_qubits} qubit(s)")
    weights, vectors = np.linalg.eigh(rho.matrix)
    weights = np.clip(weights, 0.0, None)
    amplitudes = np.zeros(4, dtype=complex)
    for i in range(2):
        amplitudes[2 * i:2 * i + 2] = np.sqrt(weights[i]) * vectors[:, i]
    amplitudes /= np.linalg.norm(amplitudes)
    return PureState(2, amplitudes)


def verify_circuit_vs_analytic(n_samples: int, seed: int, tolerance: float) -> VerificationReport:
    """Compare simulated output marginals with the closed-form channel.

    Draws ``n_samples`` random single-qubit states, purifies each onto a
    two-qubit pair, clones the second qubit across a 21-point alpha grid
    and measures the worst elementwise deviation of the port 2/3/4
    marginals from the analytic forms. Failure is reported, not raised.
    """
    if n_samples < 1:
        raise ValueError(f"need at least one sample, got {n_samples}")
    if tolerance <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tolerance!r}")
    rng = np.random.default_rng(seed)
    alphas = uniform_grid(_VERIFY_ALPHA_POINTS)
    max_deviation = 0.0
    for _ in range(n_samples):
        rho_in = random_qubit_state(rng)
        pair = purify_to_pair(rho_in)
        for alpha in alphas:
            output = clone_pair_member(float(alpha), pair)
            analytic = cloner_marginals_analytic(rho_in, float(alpha))
            for port, expected in zip((2, 3, 4), analytic):
                simulated = partial_trace(output, [port]).matrix
                deviation = float(np.max(np.abs(simulated - expected)))
                max_deviation = max(max_deviation, deviation)
    return VerificationReport(
        n_samples=n_samples,
        seed=seed,
        tolerance=tolerance,
        alpha_points=_VERIFY_ALPHA_POINTS,
        max_deviation=max_deviation,
        passed=max_deviation <= tolerance,
    )
