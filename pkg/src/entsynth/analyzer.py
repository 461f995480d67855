"""Structure analysis of synthesized states.

Builds the CNOT interaction graph, simulates each connected component in
isolation (CNOTs never cross components, so the full state factorizes), and
classifies every component against a small canonical dictionary: GHZ_k,
BELL, PLUS, ZERO, ROTATED_PAIR.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .circuits import Circuit, Gate, check_valid
from .sim import MWReport, evaluate, fidelity_up_to_phase, simulate

COMPONENT_CAP = 12
FIDELITY_THRESHOLD = 0.999
UNCLASSIFIED = "UNCLASSIFIED"

_THETA_GRID = np.arange(0.0, 2.0 * np.pi, 1e-3)


@dataclass(frozen=True)
class InteractionGraph:
    """Undirected CNOT-coupling graph; components partition the qubits."""

    num_qubits: int
    edges: tuple[tuple[int, int], ...]
    components: tuple[tuple[int, ...], ...]


def interaction_graph(circuit: Circuit) -> InteractionGraph:
    """One edge per distinct CNOT-coupled pair; components via union-find."""
    check_valid(circuit)
    n = circuit.num_qubits
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = set()
    for gate in circuit.gates:
        if gate.kind == "CNOT":
            a, b = gate.wires
            edges.add((min(a, b), max(a, b)))
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for qubit in range(n):
        groups.setdefault(find(qubit), []).append(qubit)
    components = tuple(sorted((tuple(sorted(g)) for g in groups.values()),
                              key=lambda comp: comp[0]))
    return InteractionGraph(n, tuple(sorted(edges)), components)


def is_clifford(circuit: Circuit) -> bool:
    """True iff every RY angle is a multiple of 2*pi; H and CNOT are Clifford."""
    for gate in circuit.gates:
        if gate.kind == "RY" and abs(math.remainder(gate.angle, 2.0 * math.pi)) > 1e-12:
            return False
    return True


def subcircuit_on(circuit: Circuit, qubits: tuple[int, ...]) -> Circuit:
    """Restrict to gates acting inside `qubits`, relabeled to local indices."""
    local = {q: i for i, q in enumerate(sorted(qubits))}
    gates = []
    for gate in circuit.gates:
        inside = [w in local for w in gate.wires]
        if all(inside):
            gates.append(Gate(gate.kind, tuple(local[w] for w in gate.wires),
                              gate.angle))
        elif any(inside):
            raise ValueError(f"gate {gate} straddles the qubit subset")
    return Circuit(len(qubits), tuple(gates))


@dataclass(frozen=True)
class ComponentReport:
    """Classification of one interaction-graph component."""

    qubits: tuple[int, ...]
    label: str
    fidelity: float
    theta: float | None = None
    reason: str | None = None


@dataclass(frozen=True, eq=False)
class AnalysisReport:
    """Global MW report plus per-component classifications."""

    mw: MWReport
    components: tuple[ComponentReport, ...]
    clifford: bool
    graph: InteractionGraph


def _ghz_amplitudes(k: int) -> np.ndarray:
    state = np.zeros(1 << k, dtype=np.complex128)
    state[0] = state[-1] = np.sqrt(0.5)
    return state


def _rotated_pair_fit(amps: np.ndarray) -> tuple[float, float]:
    """Best fidelity against cos(theta/2)|00> + sin(theta/2)|11> and its theta."""
    a00 = complex(amps[0])
    a11 = complex(amps[3])

    def fidelity(theta: float) -> float:
        overlap = np.cos(theta / 2.0) * a00 + np.sin(theta / 2.0) * a11
        return abs(overlap) ** 2

    grid_vals = (np.abs(np.cos(_THETA_GRID / 2.0) * a00
                        + np.sin(_THETA_GRID / 2.0) * a11) ** 2)
    best = int(np.argmax(grid_vals))
    theta0 = float(_THETA_GRID[best])
    refined = minimize_scalar(lambda t: -fidelity(t),
                              bounds=(theta0 - 2e-3, theta0 + 2e-3),
                              method="bounded")
    theta = float(refined.x)
    return fidelity(theta), theta


def classify_state(amps: np.ndarray, threshold: float = FIDELITY_THRESHOLD
                   ) -> ComponentReport:
    """Classify a component state on local qubit labels 0..k-1."""
    k = int(np.log2(amps.shape[0]))
    qubits = tuple(range(k))
    if k >= 2:
        fid = fidelity_up_to_phase(_ghz_amplitudes(k), amps)
        if fid >= threshold:
            label = "BELL" if k == 2 else f"GHZ_{k}"
            return ComponentReport(qubits, label, fid)
        if k == 2:
            fid, theta = _rotated_pair_fit(amps)
            if fid >= threshold:
                return ComponentReport(qubits, "ROTATED_PAIR", fid, theta=theta)
        return ComponentReport(qubits, UNCLASSIFIED, 0.0,
                               reason="no dictionary state above threshold")
    plus = np.full(2, np.sqrt(0.5), dtype=np.complex128)
    fid = fidelity_up_to_phase(plus, amps)
    if fid >= threshold:
        return ComponentReport(qubits, "PLUS", fid)
    fid = float(abs(amps[0]) ** 2)
    if fid >= threshold:
        return ComponentReport(qubits, "ZERO", fid)
    return ComponentReport(qubits, UNCLASSIFIED, 0.0,
                           reason="no dictionary state above threshold")


def classify_components(circuit: Circuit, *,
                        component_cap: int = COMPONENT_CAP,
                        threshold: float = FIDELITY_THRESHOLD) -> AnalysisReport:
    """Classify every interaction-graph component and report global MW."""
    graph = interaction_graph(circuit)
    reports = []
    for component in graph.components:
        if len(component) > component_cap:
            reports.append(ComponentReport(
                component, UNCLASSIFIED, 0.0,
                reason=f"component exceeds the {component_cap}-qubit "
                       f"sub-simulation cap"))
            continue
        sub = subcircuit_on(circuit, component)
        local = classify_state(simulate(sub).amplitudes, threshold)
        reports.append(ComponentReport(component, local.label, local.fidelity,
                                       theta=local.theta, reason=local.reason))
    mw = evaluate(circuit)
    return AnalysisReport(mw=mw, components=tuple(reports),
                          clifford=is_clifford(circuit), graph=graph)


def summarize_components(report: AnalysisReport) -> str:
    """Aggregate counts like "11 × BELL, 1 × GHZ_3", largest groups first."""
    counts = Counter(component.label for component in report.components)
    ordered = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return ", ".join(f"{count} × {label}" for label, count in ordered)
