"""Dense statevector simulation and Meyer-Wallach entanglement scoring.

The fast path simulates in place with numba kernels and accumulates each
qubit's 2x2 reduced density matrix over amplitude pairs. A density-matrix
oracle provides an independent verification path for small registers.
"""

from __future__ import annotations

from dataclasses import dataclass
from string import ascii_lowercase

import numpy as np

from . import _kernels
from .circuits import Circuit, Gate, check_valid

MAX_QUBITS = 26
ORACLE_MAX_QUBITS = 10

# Fixed purity reduction block: large enough to amortize, small enough that
# per-block float64 sums stay well under 1e-10 absolute error at n = 26.
_PURITY_BLOCK = 1 << 15

_SQRT_HALF = float(np.sqrt(0.5))


class ResourceLimitError(RuntimeError):
    """Raised when a register exceeds the supported qubit count."""


@dataclass
class StateVector:
    """2^n packed amplitudes; index bit i holds the value of qubit i."""

    num_qubits: int
    amplitudes: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def zero_state(num_qubits: int, dtype=np.complex128) -> StateVector:
    """|0...0> on num_qubits qubits."""
    _check_cap(num_qubits)
    amps = np.zeros(1 << num_qubits, dtype=dtype)
    amps[0] = 1.0
    return StateVector(num_qubits, amps)


def _check_cap(num_qubits: int) -> None:
    if num_qubits < 1:
        raise ValueError(f"need at least one qubit, got {num_qubits}")
    if num_qubits > MAX_QUBITS:
        raise ResourceLimitError(
            f"{num_qubits} qubits exceeds the {MAX_QUBITS}-qubit cap "
            f"({2 ** MAX_QUBITS} amplitudes)")


def _apply_inplace(amps: np.ndarray, gate: Gate) -> None:
    if gate.kind == "H":
        _kernels.apply_1q(amps, _SQRT_HALF, _SQRT_HALF, _SQRT_HALF, -_SQRT_HALF,
                          gate.wires[0])
    elif gate.kind == "RY":
        c = float(np.cos(gate.angle / 2.0))
        s = float(np.sin(gate.angle / 2.0))
        _kernels.apply_1q(amps, c, -s, s, c, gate.wires[0])
    elif gate.kind == "CNOT":
        _kernels.apply_cnot(amps, gate.wires[0], gate.wires[1])
    else:
        raise ValueError(f"unknown gate kind {gate.kind!r}")


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Apply one gate, returning a new StateVector; the input is not mutated."""
    for wire in gate.wires:
        if not 0 <= wire < state.num_qubits:
            raise ValueError(f"wire {wire} out of range for {state.num_qubits} qubits")
    amps = state.amplitudes.copy()
    _apply_inplace(amps, gate)
    return StateVector(state.num_qubits, amps)


def simulate(circuit: Circuit, *, precision: str = "double") -> StateVector:
    """Fold the gate list over |0...0> in a single in-place buffer."""
    check_valid(circuit)
    _check_cap(circuit.num_qubits)
    if precision == "double":
        dtype = np.complex128
    elif precision == "single":
        dtype = np.complex64
    else:
        raise ValueError(f"precision must be 'double' or 'single', got {precision!r}")
    state = zero_state(circuit.num_qubits, dtype=dtype)
    for gate in circuit.gates:
        _apply_inplace(state.amplitudes, gate)
    return state


def qubit_purities(state: StateVector) -> np.ndarray:
    """Tr rho_i^2 for every qubit i, from blockwise-deterministic pair sums."""
    out = np.empty(state.num_qubits)
    for i in range(state.num_qubits):
        p00b, p11b, re01b, im01b = _kernels.purity_terms(
            state.amplitudes, i, _PURITY_BLOCK)
        p00 = float(np.sum(p00b))
        p11 = float(np.sum(p11b))
        re01 = float(np.sum(re01b))
        im01 = float(np.sum(im01b))
        out[i] = p00 * p00 + p11 * p11 + 2.0 * (re01 * re01 + im01 * im01)
    return out


@dataclass(frozen=True, eq=False)
class MWReport:
    """Meyer-Wallach score q = 2 * (1 - mean purity) plus the per-qubit purities."""

    q: float
    purities: np.ndarray


def meyer_wallach(state: StateVector) -> MWReport:
    """Score a normalized state; q is 0 for product states and 1 for GHZ.

    q is clamped to [0, 1], which roundoff can exceed by ~1e-16.
    """
    purities = qubit_purities(state)
    q = 2.0 * (1.0 - float(np.mean(purities)))
    return MWReport(q=min(max(q, 0.0), 1.0), purities=purities)


def evaluate(circuit: Circuit, *, precision: str = "double") -> MWReport:
    """Simulate the circuit and score the resulting state."""
    return meyer_wallach(simulate(circuit, precision=precision))


def meyer_wallach_oracle(state: StateVector | Circuit) -> float:
    """Independent q via the full density matrix and explicit partial traces.

    Builds rho = |psi><psi| and einsum-traces out all but one qubit at a
    time; quadratic memory limits it to ORACLE_MAX_QUBITS. Accepts a
    circuit, which is simulated first.
    """
    if isinstance(state, Circuit):
        state = simulate(state)
    n = state.num_qubits
    if n > ORACLE_MAX_QUBITS:
        raise ResourceLimitError(
            f"oracle supports at most {ORACLE_MAX_QUBITS} qubits, got {n}")
    psi = state.amplitudes.astype(np.complex128).ravel()
    rho = np.outer(psi, psi.conj()).reshape((2,) * (2 * n))
    # Axis k of the reshaped tensor is qubit n-1-k; columns follow rows.
    purity_sum = 0.0
    for qubit in range(n):
        row_letters = list(ascii_lowercase[:n])
        col_letters = list(ascii_lowercase[:n])
        axis = n - 1 - qubit
        row_letters[axis] = "y"
        col_letters[axis] = "z"
        subscripts = "".join(row_letters) + "".join(col_letters) + "->yz"
        reduced = np.einsum(subscripts, rho)
        purity_sum += float(np.real(np.trace(reduced @ reduced)))
    return (2.0 / n) * (n - purity_sum)


def fidelity_up_to_phase(a: np.ndarray, b: np.ndarray) -> float:
    """|<a|b>|^2 for normalized vectors; 1 means equal up to a global phase."""
    return float(abs(np.vdot(np.ravel(a), np.ravel(b))) ** 2)


def states_equal_up_to_phase(a: StateVector, b: StateVector,
                             tol: float = 1e-10) -> bool:
    """Whether two normalized states coincide up to a global phase."""
    if a.num_qubits != b.num_qubits:
        return False
    return fidelity_up_to_phase(a.amplitudes, b.amplitudes) >= 1.0 - tol
