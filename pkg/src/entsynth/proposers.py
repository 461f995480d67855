"""Proposer contract plus the hill-climbing baseline and a replay proposer.

A proposer turns the current circuit (and optional score feedback) into the
next candidate edit. All proposers emit raw text plus its parsed result so
the optimization loop treats local search, scripted replay, and remote
language models uniformly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Protocol

import numpy as np

from .circuits import (AngleSet, Circuit, CircuitError, Gate, as_rng,
                       check_valid, random_gate)
from .dsl import ParseError, curate, parse, serialize

MOVE_PROBABILITIES = {"replace": 0.5, "rewire": 0.4, "swap": 0.1}
_MAX_MUTATE_TRIES = 100


@dataclass(frozen=True)
class ProposalContext:
    """Inputs a proposer may condition on for one step.

    delta_q is None on the first step of a query (no previous candidate to
    compare against). gate_budget equals the current gate count whenever the
    strict edit policy is active.
    """

    current_circuit: Circuit
    current_q: float
    delta_q: float | None
    step_index: int
    query_index: int
    allowed_angles: AngleSet
    gate_budget: int


@dataclass(frozen=True)
class ProposalOutcome:
    """Raw proposer text plus its curated/parsed result.

    parsed is a Circuit on success and the offending exception otherwise
    (parse failures, transport failures, script exhaustion).
    """

    raw_text: str
    parsed: Circuit | Exception
    latency: float
    proposer_id: str

    @property
    def ok(self) -> bool:
        return isinstance(self.parsed, Circuit)

    @property
    def failure(self) -> str | None:
        if isinstance(self.parsed, Circuit):
            return None
        return str(self.parsed)


class Proposer(Protocol):
    """Anything that can propose the next circuit edit."""

    proposer_id: str

    def propose(self, context: ProposalContext) -> ProposalOutcome:
        """Produce one candidate; never mutates the context."""
        ...


def parse_proposal(raw_text: str, num_qubits: int) -> Circuit | Exception:
    """Curate then parse proposer text, returning the error instead of raising."""
    try:
        return parse(curate(raw_text), num_qubits=num_qubits)
    except (ParseError, CircuitError) as exc:
        return exc


class ScriptExhausted(RuntimeError):
    """Replay script ran out of entries."""


def _rewire(gate: Gate, num_qubits: int, rng: np.random.Generator) -> Gate:
    if gate.kind == "CNOT":
        control, target = rng.choice(num_qubits, size=2, replace=False)
        return Gate("CNOT", (int(control), int(target)))
    wire = int(rng.integers(num_qubits))
    return Gate(gate.kind, (wire,), gate.angle)


def hillclimb_mutate(circuit: Circuit, angles: AngleSet,
                     rng: np.random.Generator | int | None) -> Circuit:
    """Apply one random move: replace 0.5 / rewire 0.4 / swap 0.1.

    replace overwrites one gate with a fresh random gate, rewire redraws one
    gate's wires keeping kind and angle, swap exchanges two gate positions.
    Gate count is always preserved; swap is excluded for single-gate
    circuits. Redraws until the output differs from the input.
    """
    check_valid(circuit)
    rng = as_rng(rng)
    moves = list(MOVE_PROBABILITIES.items())
    if circuit.num_gates < 2:
        moves = [(name, p) for name, p in moves if name != "swap"]
    names = [name for name, _ in moves]
    weights = np.array([p for _, p in moves])
    weights /= weights.sum()
    gates = list(circuit.gates)
    for _ in range(_MAX_MUTATE_TRIES):
        move = names[int(rng.choice(len(names), p=weights))]
        mutated = list(gates)
        if move == "replace":
            index = int(rng.integers(len(gates)))
            mutated[index] = random_gate(circuit.num_qubits, angles, rng)
        elif move == "rewire":
            index = int(rng.integers(len(gates)))
            mutated[index] = _rewire(gates[index], circuit.num_qubits, rng)
        else:
            i, j = (int(x) for x in rng.choice(len(gates), size=2, replace=False))
            mutated[i], mutated[j] = mutated[j], mutated[i]
        if mutated != gates:
            return Circuit(circuit.num_qubits, tuple(mutated))
    return Circuit(circuit.num_qubits, tuple(mutated))


@dataclass(frozen=True)
class HillClimbResult:
    """Trace of one budgeted hill-climb run."""

    best_circuit: Circuit
    best_q: float
    initial_q: float
    candidate_qs: tuple[float, ...]
    incumbent_qs: tuple[float, ...]


def hillclimb_run(initial: Circuit, budget: int, angles: AngleSet,
                  seed: np.random.Generator | int | None,
                  evaluator: Callable[[Circuit], float], *,
                  initial_q: float | None = None) -> HillClimbResult:
    """Budgeted local search accepting only strict MW improvements.

    Spends exactly `budget` evaluator calls. When initial_q is not supplied
    the first call scores the start circuit; pass a precomputed initial_q to
    devote the whole budget to candidates (budget-matched comparisons).
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    check_valid(initial)
    rng = as_rng(seed)
    remaining = budget
    if initial_q is None:
        initial_q = float(evaluator(initial))
        remaining -= 1
    incumbent, incumbent_q = initial, float(initial_q)
    candidate_qs: list[float] = []
    incumbent_qs: list[float] = []
    for _ in range(remaining):
        candidate = hillclimb_mutate(incumbent, angles, rng)
        q = float(evaluator(candidate))
        candidate_qs.append(q)
        if q > incumbent_q:
            incumbent, incumbent_q = candidate, q
        incumbent_qs.append(incumbent_q)
    return HillClimbResult(incumbent, incumbent_q, float(initial_q),
                           tuple(candidate_qs), tuple(incumbent_qs))


@dataclass
class HillClimbProposer:
    """Proposer that mutates the context's current circuit by one move."""

    rng: np.random.Generator = field(default_factory=lambda: as_rng(None))
    proposer_id: str = "hillclimb"

    def propose(self, context: ProposalContext) -> ProposalOutcome:
        start = time.perf_counter()
        mutated = hillclimb_mutate(context.current_circuit,
                                   context.allowed_angles, self.rng)
        raw_text = serialize(mutated)
        parsed = parse_proposal(raw_text, context.current_circuit.num_qubits)
        return ProposalOutcome(raw_text, parsed,
                               time.perf_counter() - start, self.proposer_id)


class ReplayProposer:
    """Proposer that replays a fixed list of raw texts, then reports exhaustion."""

    def __init__(self, script, proposer_id: str = "replay") -> None:
        self.script = tuple(script)
        self.proposer_id = proposer_id
        self._cursor = 0

    def propose(self, context: ProposalContext) -> ProposalOutcome:
        start = time.perf_counter()
        if self._cursor >= len(self.script):
            return ProposalOutcome("", ScriptExhausted("script exhausted"),
                                   time.perf_counter() - start, self.proposer_id)
        raw_text = self.script[self._cursor]
        self._cursor += 1
        parsed = parse_proposal(raw_text, context.current_circuit.num_qubits)
        return ProposalOutcome(raw_text, parsed,
                               time.perf_counter() - start, self.proposer_id)


def replay_proposer(script) -> ReplayProposer:
    """Build a proposer whose k-th call returns the k-th script entry."""
    return ReplayProposer(script)


SCRIPT_SEPARATOR = "---"


def load_script(path: str | Path) -> tuple[str, ...]:
    """Read a replay script: proposals separated by lines holding only ---."""
    text = Path(path).read_text(encoding="utf-8")
    entries, current = [], []
    for line in text.splitlines():
        if line.strip() == SCRIPT_SEPARATOR:
            entries.append("\n".join(current))
            current = []
        else:
            current.append(line)
    if current and any(line.strip() for line in current):
        entries.append("\n".join(current))
    return tuple(entries)


def save_script(entries, path: str | Path) -> None:
    """Write a replay script in the --- separated format load_script reads."""
    text = f"\n{SCRIPT_SEPARATOR}\n".join(str(e) for e in entries)
    Path(path).write_text(text + "\n", encoding="utf-8")
