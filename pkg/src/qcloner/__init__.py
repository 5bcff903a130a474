"""Exact density-operator simulation of a programmable cloning circuit.

The package builds the four-CNOT cloner, runs it on entangled inputs,
and measures what entanglement survives on each output pair: Wootters
concurrence, Werner weights and monogamy (CKW) saturation, with
closed-form cross-checks for every simulated marginal.
"""

from .circuits import (
    BellFamily,
    CircuitLayout,
    InputStateSpec,
    ProgramSpec,
    bell_state,
    clone_pair_member,
    ghz_state,
    input_state,
    program_state,
    run_bipartite,
    run_ghz,
    ucqc_unitary,
)
from .entanglement import (
    CkwReport,
    WernerFit,
    ckw_saturation,
    concurrence,
    one_tangle,
    werner_fit,
    wootters_tilde,
)
from .qstate import (
    DensityOperator,
    MeasurementRecord,
    PureState,
    apply_unitary,
    embed,
    kron,
    matrix_sqrt_psd,
    measure_projective,
    partial_trace,
)
from .scenarios import (
    SWEEP_PAIRS,
    CkwScanPoint,
    GhzReport,
    SweepResult,
    VerificationReport,
    bipartite_sweep,
    ckw_scan,
    cloner_marginals_analytic,
    ghz_pipeline,
    purify_to_pair,
    random_qubit_state,
    uniform_grid,
    verify_circuit_vs_analytic,
    werner_gamma_analytic,
)

__version__ = "0.1.0"

__all__ = [
    "BellFamily",
    "CircuitLayout",
    "CkwReport",
    "CkwScanPoint",
    "DensityOperator",
    "GhzReport",
    "InputStateSpec",
    "MeasurementRecord",
    "ProgramSpec",
    "PureState",
    "SWEEP_PAIRS",
    "SweepResult",
    "VerificationReport",
    "WernerFit",
    "apply_unitary",
    "bell_state",
    "bipartite_sweep",
    "ckw_saturation",
    "ckw_scan",
    "clone_pair_member",
    "cloner_marginals_analytic",
    "concurrence",
    "embed",
    "ghz_pipeline",
    "ghz_state",
    "input_state",
    "kron",
    "matrix_sqrt_psd",
    "measure_projective",
    "one_tangle",
    "partial_trace",
    "program_state",
    "purify_to_pair",
    "random_qubit_state",
    "run_bipartite",
    "run_ghz",
    "ucqc_unitary",
    "uniform_grid",
    "verify_circuit_vs_analytic",
    "werner_fit",
    "werner_gamma_analytic",
]
