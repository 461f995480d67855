"""Closed-loop synthesis: propose, police, evaluate, feed back, restart.

One experiment is a fixed number of queries, each a fixed number of steps.
Within a query the chain follows the proposal sequence (each step edits the
previous step's circuit, even after a score drop); the best circuit seen so
far only seeds the next query's restart. Rejected proposals (unparseable,
wrong gate count, off-palette angle) consume a step but no evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .circuits import (AngleSet, Circuit, DEFAULT_ANGLES, as_rng,
                       random_circuit, validate_against_angle_set)
from .proposers import (HillClimbResult, ProposalContext, Proposer,
                        hillclimb_run)
from .sim import evaluate

STOP_THRESHOLD = 1.0 - 1e-9

REJECT_PARSE = "parse"
REJECT_GATE_COUNT = "gate-count"
REJECT_ANGLE_SET = "angle-set"

Evaluator = Callable[[Circuit], float]


def default_evaluator(circuit: Circuit) -> float:
    """Score one circuit: simulate and return the MW measure."""
    return evaluate(circuit).q


@dataclass(frozen=True)
class OptimizerConfig:
    """Experiment shape: search budget, edit policy, and start conditions.

    initial_circuit is either a Circuit or the string "random" (seeded by
    `seed`). The total candidate-evaluation budget is queries *
    steps_per_query; the one-off scoring of the start circuit is extra.
    """

    num_qubits: int
    gate_budget: int
    angle_set: AngleSet = DEFAULT_ANGLES
    queries: int = 3
    steps_per_query: int = 15
    feedback_enabled: bool = True
    strict_gate_count: bool = True
    proposer: str = "hillclimb"
    seed: int | None = None
    initial_circuit: Circuit | str = "random"

    def __post_init__(self):
        if self.queries < 1:
            raise ValueError("queries must be at least 1")
        if self.steps_per_query < 1:
            raise ValueError("steps_per_query must be at least 1")
        if self.gate_budget < 1:
            raise ValueError("gate_budget must be at least 1")

    @property
    def budget(self) -> int:
        return self.queries * self.steps_per_query


@dataclass(frozen=True)
class StepRecord:
    """What one loop step proposed and what became of it."""

    query_index: int
    step_index: int
    raw_text: str
    parse_ok: bool
    circuit: Circuit | None
    q: float | None
    delta_q: float | None
    rejected_reason: str | None
    is_new_best: bool
    failure: str | None = None

    @property
    def rejected(self) -> bool:
        return self.rejected_reason is not None


@dataclass(frozen=True)
class QueryResult:
    """One query's trajectory and its best outcome."""

    query_index: int
    start_circuit: Circuit
    start_q: float
    steps: tuple[StepRecord, ...]
    best_circuit: Circuit
    best_q: float
    evaluations: int

    @property
    def improved(self) -> bool:
        return self.best_q > self.start_q


@dataclass(frozen=True)
class ExperimentResult:
    """Full record of one experiment across queries."""

    config: OptimizerConfig
    initial_circuit: Circuit
    initial_q: float
    queries: tuple[QueryResult, ...]
    best_circuit: Circuit
    best_q: float
    evaluations: int
    early_stopped: bool


def run_query(start: Circuit, config: OptimizerConfig, proposer: Proposer,
              evaluator: Evaluator = default_evaluator, *,
              query_index: int = 0, start_q: float | None = None,
              global_best_q: float | None = None,
              stop_threshold: float = STOP_THRESHOLD) -> QueryResult:
    """Run one query of steps from `start`, following the proposal chain.

    Pass start_q to avoid re-scoring the start circuit; otherwise one extra
    evaluator call computes it. Candidate evaluations are counted in the
    result. The step loop ends early once the query best reaches
    stop_threshold.
    """
    if start_q is None:
        start_q = float(evaluator(start))
    global_best = start_q if global_best_q is None else max(global_best_q,
                                                            start_q)
    memory, memory_q = start, float(start_q)
    delta_q: float | None = None
    best_circuit, best_q = start, float(start_q)
    steps: list[StepRecord] = []
    evaluations = 0
    for step_index in range(config.steps_per_query):
        context = ProposalContext(
            current_circuit=memory, current_q=memory_q, delta_q=delta_q,
            step_index=step_index, query_index=query_index,
            allowed_angles=config.angle_set, gate_budget=config.gate_budget)
        outcome = proposer.propose(context)
        reason = None
        candidate = outcome.parsed if outcome.ok else None
        if candidate is None:
            reason = REJECT_PARSE
        elif (config.strict_gate_count
              and candidate.num_gates != config.gate_budget):
            reason = REJECT_GATE_COUNT
        elif validate_against_angle_set(candidate, config.angle_set):
            reason = REJECT_ANGLE_SET
        if reason is not None:
            steps.append(StepRecord(
                query_index, step_index, outcome.raw_text, outcome.ok,
                candidate, None, None, reason, False,
                failure=outcome.failure))
            delta_q = 0.0
            continue
        q = float(evaluator(candidate))
        evaluations += 1
        dq = q - memory_q
        is_new_best = q > global_best
        if is_new_best:
            global_best = q
        if q > best_q:
            best_circuit, best_q = candidate, q
        steps.append(StepRecord(query_index, step_index, outcome.raw_text,
                                True, candidate, q, dq, None, is_new_best))
        memory, memory_q = candidate, q
        delta_q = dq
        if best_q >= stop_threshold:
            break
    return QueryResult(query_index, start, float(start_q), tuple(steps),
                       best_circuit, best_q, evaluations)


def resolve_initial(config: OptimizerConfig) -> Circuit:
    """Materialize the configured start circuit."""
    if isinstance(config.initial_circuit, Circuit):
        return config.initial_circuit
    if config.initial_circuit == "random":
        return random_circuit(config.num_qubits, config.gate_budget,
                              angles=config.angle_set,
                              rng=as_rng(config.seed))
    raise ValueError(
        f"initial_circuit must be a Circuit or 'random', "
        f"got {config.initial_circuit!r}")


def run_experiment(config: OptimizerConfig, proposer: Proposer,
                   evaluator: Evaluator = default_evaluator
                   ) -> ExperimentResult:
    """Run all queries with restart-from-best between them.

    Query 1 starts from the configured initial circuit; every later query
    starts from the best circuit found so far. The experiment stops early
    once the best MW measure reaches 1 (within 1e-9).
    """
    initial = resolve_initial(config)
    initial_q = float(evaluator(initial))
    best_circuit, best_q = initial, initial_q
    queries: list[QueryResult] = []
    evaluations = 0
    early_stopped = best_q >= STOP_THRESHOLD
    for query_index in range(config.queries):
        if early_stopped:
            break
        result = run_query(best_circuit, config, proposer, evaluator,
                           query_index=query_index, start_q=best_q,
                           global_best_q=best_q)
        queries.append(result)
        evaluations += result.evaluations
        if result.best_q > best_q:
            best_circuit, best_q = result.best_circuit, result.best_q
        if best_q >= STOP_THRESHOLD:
            early_stopped = True
    return ExperimentResult(config, initial, initial_q, tuple(queries),
                            best_circuit, best_q, evaluations, early_stopped)


@dataclass(frozen=True)
class ComparisonRow:
    """One seed's budget-matched outcomes."""

    seed: int
    initial_q: float
    hillclimb_best_q: float
    proposer_best_q: float | None = None


def compare_budget_matched(config: OptimizerConfig, seeds,
                           proposer_factory: Callable[[int], Proposer]
                           | None = None,
                           evaluator: Evaluator = default_evaluator
                           ) -> tuple[ComparisonRow, ...]:
    """Per seed: identical start circuit, identical candidate budget.

    The hill-climb baseline always runs; a second proposer runs through the
    full loop when proposer_factory is given. Both spend config.budget
    candidate evaluations from the same scored start.
    """
    if not seeds:
        raise ValueError("at least one seed is required")
    rows = []
    for seed in seeds:
        initial = random_circuit(config.num_qubits, config.gate_budget,
                                 angles=config.angle_set, rng=as_rng(seed))
        initial_q = float(evaluator(initial))
        climb: HillClimbResult = hillclimb_run(
            initial, config.budget, config.angle_set, seed, evaluator,
            initial_q=initial_q)
        proposer_best = None
        if proposer_factory is not None:
            run_config = OptimizerConfig(
                num_qubits=config.num_qubits, gate_budget=config.gate_budget,
                angle_set=config.angle_set, queries=config.queries,
                steps_per_query=config.steps_per_query,
                feedback_enabled=config.feedback_enabled,
                strict_gate_count=config.strict_gate_count,
                proposer=config.proposer, seed=seed, initial_circuit=initial)
            outcome = run_experiment(run_config, proposer_factory(seed),
                                     evaluator)
            proposer_best = outcome.best_q
        rows.append(ComparisonRow(int(seed), initial_q, climb.best_q,
                                  proposer_best))
    return tuple(rows)
