"""Dense density-operator mechanics for small qubit registers.

Everything here is exact linear algebra on 2^n x 2^n complex matrices:
tensor products, gate embedding, unitary evolution, partial traces,
projective measurement in the |+-> basis, and the PSD matrix square
root used by entanglement measures.

Qubit indices are 1-based and qubit 1 is the most significant tensor
factor, i.e. the leftmost label in a ket |q1 q2 ... qn>.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "HERMITIAN_ATOL",
    "TRACE_ATOL",
    "EIGENVALUE_FLOOR",
    "UNITARY_ATOL",
    "ZERO_BRANCH_PROBABILITY",
    "IDENTITY_2",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "CNOT",
    "KET_PLUS",
    "KET_MINUS",
    "PureState",
    "DensityOperator",
    "MeasurementRecord",
    "kron",
    "embed",
    "apply_unitary",
    "partial_trace",
    "measure_projective",
    "matrix_sqrt_psd",
]

HERMITIAN_ATOL = 1e-12
TRACE_ATOL = 1e-12
EIGENVALUE_FLOOR = -1e-12
UNITARY_ATOL = 1e-10
ZERO_BRANCH_PROBABILITY = 1e-14

IDENTITY_2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
# Control on the first factor, target on the second.
CNOT = np.array(
    [[1, 0, 0, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0]],
    dtype=complex,
)
KET_PLUS = np.array([1, 1], dtype=complex) / math.sqrt(2)
KET_MINUS = np.array([1, -1], dtype=complex) / math.sqrt(2)


def _own(array, dtype=complex) -> np.ndarray:
    """Copy into a read-only array so frozen holders cannot be mutated."""
    out = np.array(array, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class PureState:
    """State vector of an n-qubit register, unit norm within 1e-12."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = _own(self.amplitudes)
        dim = 2 ** self.n_qubits
        if amps.shape != (dim,):
            raise ValueError(
                f"expected {dim} amplitudes for {self.n_qubits} qubit(s), got shape {amps.shape}"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state vector norm {norm!r} is not 1")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 2 ** self.n_qubits

    def density(self) -> "DensityOperator":
        """Return the projector |psi><psi| as a density operator."""
        return DensityOperator(self.n_qubits, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Mixed state of an n-qubit register as a dense 2^n x 2^n matrix.

    Construction validates Hermiticity and unit trace to 1e-12 and
    positivity up to -1e-12 eigenvalue noise; anything worse is rejected
    rather than silently repaired.
    """

    n_qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        matrix = _own(self.matrix)
        dim = 2 ** self.n_qubits
        if matrix.shape != (dim, dim):
            raise ValueError(
                f"expected a {dim}x{dim} matrix for {self.n_qubits} qubit(s), got shape {matrix.shape}"
            )
        herm_defect = float(np.max(np.abs(matrix - matrix.conj().T)))
        if herm_defect > HERMITIAN_ATOL:
            raise ValueError(f"matrix is not Hermitian (max |rho - rho^dag| = {herm_defect:.3e})")
        trace = complex(np.trace(matrix))
        if abs(trace - 1.0) > TRACE_ATOL:
            raise ValueError(f"trace {trace!r} is not 1")
        lowest = float(np.linalg.eigvalsh(matrix)[0])
        if lowest < EIGENVALUE_FLOOR:
            raise ValueError(f"matrix has a negative eigenvalue {lowest:.3e}")
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def from_matrix(cls, matrix) -> "DensityOperator":
        """Build from a square matrix, inferring the qubit count."""
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {matrix.shape}")
        n = int(round(math.log2(matrix.shape[0])))
        if 2 ** n != matrix.shape[0]:
            raise ValueError(f"dimension {matrix.shape[0]} is not a power of 2")
        return cls(n, matrix)

    @classmethod
    def maximally_mixed(cls, n_qubits: int) -> "DensityOperator":
        dim = 2 ** n_qubits
        return cls(n_qubits, np.eye(dim, dtype=complex) / dim)

    @property
    def dim(self) -> int:
        return 2 ** self.n_qubits

    def purity(self) -> float:
        """Tr(rho^2); 1 for pure states."""
        return float(np.real(np.trace(self.matrix @ self.matrix)))


@dataclass(frozen=True)
class MeasurementRecord:
    """One outcome branch of a projective measurement.

    ``post_state`` keeps the full register with the measured qubit
    projected; it is None for branches below ZERO_BRANCH_PROBABILITY.
    """

    qubit: int
    basis: str
    outcome: str
    probability: float
    post_state: DensityOperator | None


def kron(a, b) -> np.ndarray:
    """Kronecker product; the first factor is the more significant one."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def embed(gate, targets, n_qubits: int) -> np.ndarray:
    """Lift a k-qubit gate to the full 2^n register.

    Parameters
    ----------
    gate : array_like
        2^k x 2^k matrix. Its first tensor factor acts on ``targets[0]``,
        the second on ``targets[1]``, and so on.
    targets : sequence of int
        Distinct 1-based qubit indices.
    n_qubits : int
        Size of the register.

    Returns
    -------
    np.ndarray
        2^n x 2^n matrix acting as ``gate`` on ``targets`` and as the
        identity elsewhere.
    """
    gate = np.asarray(gate, dtype=complex)
    targets = [int(q) for q in targets]
    k = len(targets)
    if gate.shape != (2 ** k, 2 ** k):
        raise ValueError(f"gate of shape {gate.shape} does not act on {k} qubit(s)")
    if len(set(targets)) != k:
        raise ValueError(f"duplicate target qubit in {targets}")
    for q in targets:
        if not 1 <= q <= n_qubits:
            raise ValueError(f"target qubit {q} outside register 1..{n_qubits}")

    dim = 2 ** n_qubits
    # Bit position of qubit q in a basis index, qubit 1 being the MSB.
    shifts = [n_qubits - q for q in targets]
    clear_mask = 0
    for shift in shifts:
        clear_mask |= 1 << shift

    full = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        gate_col = 0
        for shift in shifts:
            gate_col = (gate_col << 1) | ((col >> shift) & 1)
        base = col & ~clear_mask
        for gate_row in range(2 ** k):
            amp = gate[gate_row, gate_col]
            if amp == 0:
                continue
            row = base
            for j, shift in enumerate(shifts):
                if (gate_row >> (k - 1 - j)) & 1:
                    row |= 1 << shift
            full[row, col] = amp
    return full


def apply_unitary(state: DensityOperator, u) -> DensityOperator:
    """Return U rho U^dag after checking that U is actually unitary."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (state.dim, state.dim):
        raise ValueError(f"unitary shape {u.shape} does not match register dimension {state.dim}")
    defect = float(np.max(np.abs(u.conj().T @ u - np.eye(state.dim))))
    if defect > UNITARY_ATOL:
        raise ValueError(f"matrix is not unitary (max |U^dag U - I| = {defect:.3e})")
    return DensityOperator(state.n_qubits, u @ state.matrix @ u.conj().T)


def partial_trace(state: DensityOperator, keep) -> DensityOperator:
    """Trace out everything except ``keep``.

    The reduced operator carries the kept qubits in the order given, so
    ``keep=[3, 1]`` puts qubit 3 on the first tensor factor.
    """
    keep = [int(q) for q in keep]
    if not keep:
        raise ValueError("must keep at least one qubit")
    if len(set(keep)) != len(keep):
        raise ValueError(f"duplicate qubit in keep list {keep}")
    n = state.n_qubits
    for q in keep:
        if not 1 <= q <= n:
            raise ValueError(f"qubit {q} outside register 1..{n}")

    keep0 = [q - 1 for q in keep]
    tensor = state.matrix.reshape((2,) * (2 * n))
    row_labels = list(range(n))
    col_labels = [n + i for i in range(n)]
    for i in range(n):
        if i not in keep0:
            col_labels[i] = row_labels[i]  # contract traced-out axes
    out_labels = [row_labels[i] for i in keep0] + [col_labels[i] for i in keep0]
    reduced = np.einsum(tensor, row_labels + col_labels, out_labels)
    dim = 2 ** len(keep0)
    return DensityOperator(len(keep0), reduced.reshape(dim, dim))


def measure_projective(state: DensityOperator, qubit: int, basis: str = "PlusMinus") -> list[MeasurementRecord]:
    """Von Neumann measurement of one qubit in the |+-> basis.

    Both outcome branches are always returned, probabilities summing to
    one; a branch whose probability falls below ZERO_BRANCH_PROBABILITY
    carries ``post_state=None`` instead of an ill-defined state.
    """
    if basis != "PlusMinus":
        raise ValueError(f"unsupported measurement basis {basis!r}")
    if not 1 <= qubit <= state.n_qubits:
        raise ValueError(f"qubit {qubit} outside register 1..{state.n_qubits}")

    records = []
    total = 0.0
    for outcome, vector in (("+", KET_PLUS), ("-", KET_MINUS)):
        projector = embed(np.outer(vector, vector.conj()), [qubit], state.n_qubits)
        branch = projector @ state.matrix @ projector
        probability = float(np.real(np.trace(branch)))
        total += probability
        if probability < ZERO_BRANCH_PROBABILITY:
            post = None
        else:
            post = DensityOperator(state.n_qubits, branch / probability)
        records.append(MeasurementRecord(qubit, basis, outcome, probability, post))
    if abs(total - 1.0) > 1e-12:
        raise ValueError(f"branch probabilities sum to {total!r}, not 1")
    return records


def matrix_sqrt_psd(m) -> np.ndarray:
    """Hermitian PSD square root via eigendecomposition.

    Negative eigenvalues (post-selection noise) are clamped to zero
    before the square root; a non-Hermitian input is rejected.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    defect = float(np.max(np.abs(m - m.conj().T)))
    if defect > 1e-10:
        raise ValueError(f"matrix is not Hermitian (max |m - m^dag| = {defect:.3e})")
    eigenvalues, eigenvectors = np.linalg.eigh(m)
    eigenvalues = np.clip(eigenvalues, 0.0, None)
    return (eigenvectors * np.sqrt(eigenvalues)) @ eigenvectors.conj().T
