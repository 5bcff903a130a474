"""State preparation and the programmable cloning circuit.

The cloner is a fixed network of four CNOT gates whose behavior is set
entirely by a two-qubit program state: the weight ``alpha`` (with
``beta = 1 - alpha``) interpolates between leaving the data qubit alone
(alpha=0) and transferring it completely to the clone port (alpha=1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .qstate import CNOT, DensityOperator, PureState, apply_unitary, embed, kron

__all__ = [
    "BellFamily",
    "ProgramSpec",
    "InputStateSpec",
    "CircuitLayout",
    "program_state",
    "input_state",
    "bell_state",
    "ghz_state",
    "ucqc_unitary",
    "clone_pair_member",
    "run_bipartite",
    "run_ghz",
]


class BellFamily(str, Enum):
    """The four maximally entangled two-qubit states, as input families."""

    PHI_PLUS = "phi-plus"
    PHI_MINUS = "phi-minus"
    PSI_PLUS = "psi-plus"
    PSI_MINUS = "psi-minus"

    @classmethod
    def from_label(cls, label: str) -> "BellFamily":
        for member in cls:
            if member.value == label:
                return member
        raise ValueError(f"unknown input family {label!r}; expected one of "
                         f"{[m.value for m in cls]}")


@dataclass(frozen=True)
class ProgramSpec:
    """Cloning parameter alpha in [0, 1]; beta is always derived as 1 - alpha."""

    alpha: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha={self.alpha!r} outside [0, 1]")

    @property
    def beta(self) -> float:
        return 1.0 - self.alpha

    @property
    def normalization(self) -> float:
        return 1.0 / math.sqrt(2.0 * (self.alpha + self.beta ** 2))


@dataclass(frozen=True)
class InputStateSpec:
    """Input family plus the weight c0 of its leading basis component."""

    family: BellFamily
    c0: float

    def __post_init__(self):
        if not 0.0 <= self.c0 <= 1.0:
            raise ValueError(f"c0={self.c0!r} outside [0, 1]")

    @property
    def c1(self) -> float:
        return 1.0 - self.c0


@dataclass(frozen=True)
class CircuitLayout:
    """Port assignment: which register qubits feed the cloner.

    ``data_port`` receives the qubit to be cloned; ``prog_ports`` holds
    the (clone carrier, ancilla) pair prepared in the program state.
    """

    n_qubits: int
    data_port: int
    prog_ports: tuple[int, int]

    def __post_init__(self):
        ports = (self.data_port, *self.prog_ports)
        if len(set(ports)) != 3:
            raise ValueError(f"cloner ports {ports} are not distinct")
        for q in ports:
            if not 1 <= q <= self.n_qubits:
                raise ValueError(f"port {q} outside register 1..{self.n_qubits}")


def program_state(spec: ProgramSpec) -> PureState:
    """Two-qubit program state with amplitudes N*(alpha+beta, alpha, 0, beta)."""
    a, b = spec.alpha, spec.beta
    amplitudes = spec.normalization * np.array([a + b, a, 0.0, b], dtype=complex)
    return PureState(2, amplitudes)


def input_state(spec: InputStateSpec) -> PureState:
    """Two-qubit input sqrt(c0)|00> +- sqrt(c1)|11> or sqrt(c0)|01> +- sqrt(c1)|10>."""
    lead = math.sqrt(spec.c0)
    tail = math.sqrt(spec.c1)
    if spec.family is BellFamily.PHI_PLUS:
        amplitudes = [lead, 0.0, 0.0, tail]
    elif spec.family is BellFamily.PHI_MINUS:
        amplitudes = [lead, 0.0, 0.0, -tail]
    elif spec.family is BellFamily.PSI_PLUS:
        amplitudes = [0.0, lead, tail, 0.0]
    else:
        amplitudes = [0.0, lead, -tail, 0.0]
    return PureState(2, np.array(amplitudes, dtype=complex))


def bell_state(family: BellFamily) -> PureState:
    """Maximally entangled member of the given family (c0 = 1/2)."""
    return input_state(InputStateSpec(family, 0.5))


def ghz_state() -> PureState:
    """(|000> + |111>)/sqrt(2)."""
    amplitudes = np.zeros(8, dtype=complex)
    amplitudes[0] = amplitudes[7] = 1.0 / math.sqrt(2)
    return PureState(3, amplitudes)


@lru_cache(maxsize=None)
def ucqc_unitary(layout: CircuitLayout) -> np.ndarray:
    """Full-register unitary of the four-CNOT cloning network.

    Gate order: CNOT(data->prog1), CNOT(data->prog2), CNOT(prog1->data),
    CNOT(prog2->data). The order is not unique on paper; this one is
    pinned down by agreement with the analytic output marginals.
    """
    n = layout.n_qubits
    data = layout.data_port
    prog1, prog2 = layout.prog_ports
    u = embed(CNOT, [data, prog1], n)
    u = embed(CNOT, [data, prog2], n) @ u
    u = embed(CNOT, [prog1, data], n) @ u
    u = embed(CNOT, [prog2, data], n) @ u
    u.setflags(write=False)  # cached; callers must not mutate
    return u


def clone_pair_member(alpha: float, pair: PureState) -> DensityOperator:
    """Clone the second qubit of a two-qubit pure state.

    The pair occupies qubits 1-2, the program state qubits 3-4; qubit 2
    feeds the data port and qubits (3, 4) the program ports. Returns the
    full four-qubit output state.
    """
    if pair.n_qubits != 2:
        raise ValueError(f"expected a 2-qubit pair, got {pair.n_qubits} qubit(s)")
    program = program_state(ProgramSpec(alpha))
    full = PureState(4, kron(pair.amplitudes, program.amplitudes))
    layout = CircuitLayout(n_qubits=4, data_port=2, prog_ports=(3, 4))
    return apply_unitary(full.density(), ucqc_unitary(layout))


def run_bipartite(alpha: float, input_spec: InputStateSpec) -> DensityOperator:
    """Clone one member of a (possibly partially) entangled pair."""
    return clone_pair_member(alpha, input_state(input_spec))


def run_ghz(alpha: float) -> DensityOperator:
    """Clone the third qubit of a GHZ triple; returns the 5-qubit state.

    Qubits 1-3 carry the GHZ state, qubits 4-5 the program state; qubit 3
    feeds the data port, qubit 4 carries the clone and qubit 5 the ancilla.
    No measurement is performed here.
    """
    program = program_state(ProgramSpec(alpha))
    full = PureState(5, kron(ghz_state().amplitudes, program.amplitudes))
    layout = CircuitLayout(n_qubits=5, data_port=3, prog_ports=(4, 5))
    return apply_unitary(full.density(), ucqc_unitary(layout))
