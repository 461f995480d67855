"""Gate-list circuit model: immutable gates, validation, random sampling.

Circuits are fixed-length lists of {H, RY, CNOT} gates applied in list order
to |0...0>. RY angles are radians.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

GATE_KINDS = ("H", "RY", "CNOT")

AngleSet = tuple[float, ...]

DEFAULT_ANGLES: AngleSet = (3.0, 10.0, 25.0)

RandomSource = Union[int, None, np.random.Generator]


def as_rng(source: RandomSource) -> np.random.Generator:
    """Coerce an integer seed (or None) into a numpy Generator."""
    if isinstance(source, np.random.Generator):
        return source
    return np.random.default_rng(source)


@dataclass(frozen=True)
class Gate:
    """One gate application.

    wires is (target,) for H and RY, (control, target) for CNOT; angle is
    present only for RY.
    """

    kind: str
    wires: tuple[int, ...]
    angle: float | None = None


def h(wire: int) -> Gate:
    return Gate("H", (int(wire),))


def ry(angle: float, wire: int) -> Gate:
    return Gate("RY", (int(wire),), float(angle))


def cnot(control: int, target: int) -> Gate:
    return Gate("CNOT", (int(control), int(target)))


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list on num_qubits wires; gate order is significant."""

    num_qubits: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "num_qubits", int(self.num_qubits))
        object.__setattr__(self, "gates", tuple(self.gates))

    @property
    def num_gates(self) -> int:
        return len(self.gates)


@dataclass(frozen=True)
class Violation:
    """One validation failure; gate_index is None for circuit-level issues."""

    gate_index: int | None
    message: str

    def __str__(self) -> str:
        if self.gate_index is None:
            return self.message
        return f"{self.message} at gate {self.gate_index}"


class CircuitError(ValueError):
    """Raised when a circuit that must be valid is not."""

    def __init__(self, violations: Sequence[Violation]):
        self.violations = tuple(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


def validate(circuit: Circuit) -> list[Violation]:
    """Check structural invariants; an empty list means the circuit is valid."""
    violations: list[Violation] = []
    n = circuit.num_qubits
    if n < 1:
        violations.append(Violation(None, f"num_qubits must be positive, got {n}"))
    for index, gate in enumerate(circuit.gates):
        if gate.kind not in GATE_KINDS:
            violations.append(Violation(index, f"unknown gate kind {gate.kind!r}"))
            continue
        expected_wires = 2 if gate.kind == "CNOT" else 1
        if len(gate.wires) != expected_wires:
            violations.append(Violation(
                index, f"{gate.kind} takes {expected_wires} wire(s), got {len(gate.wires)}"))
            continue
        for wire in gate.wires:
            if not isinstance(wire, int) or isinstance(wire, bool):
                violations.append(Violation(index, f"wire {wire!r} is not an integer"))
            elif not 0 <= wire < n:
                violations.append(Violation(index, f"wire {wire} out of range"))
        if gate.kind == "CNOT" and gate.wires[0] == gate.wires[1]:
            violations.append(Violation(index, "control equals target"))
        if gate.kind == "RY":
            if gate.angle is None:
                violations.append(Violation(index, "RY requires an angle"))
            elif not np.isfinite(gate.angle):
                violations.append(Violation(index, f"angle {gate.angle!r} is not finite"))
        elif gate.angle is not None:
            violations.append(Violation(index, f"{gate.kind} takes no angle"))
    return violations


def check_valid(circuit: Circuit) -> Circuit:
    """Return the circuit unchanged, raising CircuitError if it is invalid."""
    violations = validate(circuit)
    if violations:
        raise CircuitError(violations)
    return circuit


def validate_against_angle_set(circuit: Circuit, angles: AngleSet) -> list[Violation]:
    """Check that every RY angle is an exact member of the allowed set."""
    allowed = set(float(a) for a in angles)
    violations = []
    for index, gate in enumerate(circuit.gates):
        if gate.kind == "RY" and gate.angle not in allowed:
            violations.append(Violation(index, f"angle {gate.angle!r} not in allowed set"))
    return violations


def random_gate(num_qubits: int, angles: AngleSet, rng: RandomSource) -> Gate:
    """Sample one gate uniformly over kinds, wires, and (for RY) angles."""
    rng = as_rng(rng)
    kinds = GATE_KINDS if num_qubits >= 2 else ("H", "RY")
    kind = kinds[int(rng.integers(len(kinds)))]
    if kind == "CNOT":
        control, target = (int(w) for w in rng.choice(num_qubits, size=2, replace=False))
        return cnot(control, target)
    wire = int(rng.integers(num_qubits))
    if kind == "H":
        return h(wire)
    angle = float(rng.choice(np.asarray(angles, dtype=float)))
    return ry(angle, wire)


def random_circuit(num_qubits: int, num_gates: int,
                   angles: AngleSet = DEFAULT_ANGLES,
                   rng: RandomSource = None) -> Circuit:
    """Sample a valid circuit of exactly num_gates gates; deterministic per seed."""
    if num_qubits < 2:
        raise ValueError(f"random_circuit needs num_qubits >= 2, got {num_qubits}")
    if num_gates < 1:
        raise ValueError(f"random_circuit needs num_gates >= 1, got {num_gates}")
    rng = as_rng(rng)
    gates = tuple(random_gate(num_qubits, angles, rng) for _ in range(num_gates))
    return Circuit(num_qubits, gates)


def relabel_wires(circuit: Circuit, mapping: Sequence[int]) -> Circuit:
    """Relabel every wire i as mapping[i]; mapping must be a permutation of range(n)."""
    if sorted(mapping) != list(range(circuit.num_qubits)):
        raise ValueError("mapping must be a permutation of range(num_qubits)")
    gates = tuple(
        Gate(g.kind, tuple(mapping[w] for w in g.wires), g.angle)
        for g in circuit.gates)
    return Circuit(circuit.num_qubits, gates)


def inferred_num_qubits(gates: Sequence[Gate]) -> int:
    """Smallest register size covering all wires (at least 1)."""
    wires = [w for g in gates for w in g.wires]
    return max(wires) + 1 if wires else 1
