"""Persistent, replayable run records.

One experiment maps to one JSON file, content-addressed by a hash of its
config so concurrent batches never collide. Circuits are stored as
canonical gate-list text; every stored score can be recomputed from the
stored circuits alone, which replay_verify checks.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from .circuits import Circuit
from .dsl import parse, serialize
from .optimizer import (Evaluator, ExperimentResult, OptimizerConfig,
                        QueryResult, StepRecord, default_evaluator)

SCHEMA_VERSION = 1
REPLAY_TOLERANCE = 1e-9


class SchemaVersionError(RuntimeError):
    """Run file carries a schema_version this code does not understand."""


@dataclass(frozen=True)
class RunLogFile:
    """On-disk form of one experiment: versioned, timestamped, replayable."""

    schema_version: int
    created_at: str
    result: ExperimentResult


def _circuit_text(circuit: Circuit | None) -> str | None:
    return None if circuit is None else serialize(circuit)


def _circuit_from_text(text: str | None, num_qubits: int) -> Circuit | None:
    return None if text is None else parse(text, num_qubits=num_qubits)


def config_to_dict(config: OptimizerConfig) -> dict:
    initial = config.initial_circuit
    if isinstance(initial, Circuit):
        initial = {"circuit": serialize(initial)}
    return {
        "num_qubits": config.num_qubits,
        "gate_budget": config.gate_budget,
        "angle_set": list(config.angle_set),
        "queries": config.queries,
        "steps_per_query": config.steps_per_query,
        "feedback_enabled": config.feedback_enabled,
        "strict_gate_count": config.strict_gate_count,
        "proposer": config.proposer,
        "seed": config.seed,
        "initial_circuit": initial,
    }


def config_from_dict(data: dict) -> OptimizerConfig:
    initial = data["initial_circuit"]
    if isinstance(initial, dict):
        initial = parse(initial["circuit"], num_qubits=data["num_qubits"])
    return OptimizerConfig(
        num_qubits=data["num_qubits"],
        gate_budget=data["gate_budget"],
        angle_set=tuple(data["angle_set"]),
        queries=data["queries"],
        steps_per_query=data["steps_per_query"],
        feedback_enabled=data["feedback_enabled"],
        strict_gate_count=data["strict_gate_count"],
        proposer=data["proposer"],
        seed=data["seed"],
        initial_circuit=initial,
    )


def _step_to_dict(step: StepRecord) -> dict:
    return {
        "query_index": step.query_index,
        "step_index": step.step_index,
        "raw_text": step.raw_text,
        "parse_ok": step.parse_ok,
        "circuit": _circuit_text(step.circuit),
        "q": step.q,
        "delta_q": step.delta_q,
        "rejected_reason": step.rejected_reason,
        "is_new_best": step.is_new_best,
        "failure": step.failure,
    }


def _step_from_dict(data: dict, num_qubits: int) -> StepRecord:
    return StepRecord(
        query_index=data["query_index"],
        step_index=data["step_index"],
        raw_text=data["raw_text"],
        parse_ok=data["parse_ok"],
        circuit=_circuit_from_text(data["circuit"], num_qubits),
        q=data["q"],
        delta_q=data["delta_q"],
        rejected_reason=data["rejected_reason"],
        is_new_best=data["is_new_best"],
        failure=data["failure"],
    )


def _query_to_dict(query: QueryResult) -> dict:
    return {
        "query_index": query.query_index,
        "start_circuit": serialize(query.start_circuit),
        "start_q": query.start_q,
        "steps": [_step_to_dict(s) for s in query.steps],
        "best_circuit": serialize(query.best_circuit),
        "best_q": query.best_q,
        "evaluations": query.evaluations,
    }


def _query_from_dict(data: dict, num_qubits: int) -> QueryResult:
    return QueryResult(
        query_index=data["query_index"],
        start_circuit=parse(data["start_circuit"], num_qubits=num_qubits),
        start_q=data["start_q"],
        steps=tuple(_step_from_dict(s, num_qubits) for s in data["steps"]),
        best_circuit=parse(data["best_circuit"], num_qubits=num_qubits),
        best_q=data["best_q"],
        evaluations=data["evaluations"],
    )


def result_to_dict(result: ExperimentResult) -> dict:
    return {
        "config": config_to_dict(result.config),
        "initial_circuit": serialize(result.initial_circuit),
        "initial_q": result.initial_q,
        "queries": [_query_to_dict(q) for q in result.queries],
        "best_circuit": serialize(result.best_circuit),
        "best_q": result.best_q,
        "evaluations": result.evaluations,
        "early_stopped": result.early_stopped,
    }


def result_from_dict(data: dict) -> ExperimentResult:
    config = config_from_dict(data["config"])
    n = config.num_qubits
    return ExperimentResult(
        config=config,
        initial_circuit=parse(data["initial_circuit"], num_qubits=n),
        initial_q=data["initial_q"],
        queries=tuple(_query_from_dict(q, n) for q in data["queries"]),
        best_circuit=parse(data["best_circuit"], num_qubits=n),
        best_q=data["best_q"],
        evaluations=data["evaluations"],
        early_stopped=data["early_stopped"],
    )


def config_hash(config: OptimizerConfig) -> str:
    """Stable short hash of the config snapshot, for run filenames."""
    canonical = json.dumps(config_to_dict(config), sort_keys=True,
                           separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]


def run_path(config: OptimizerConfig, directory: str | Path) -> Path:
    """Content-addressed run filename inside `directory`."""
    return Path(directory) / f"run-{config_hash(config)}.json"


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name,
                               suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def write_run(result: ExperimentResult, target: str | Path) -> Path:
    """Serialize one experiment to `target` atomically.

    A directory target (existing, or spelled with a trailing separator) is
    created if needed and picks a content-addressed filename inside it; a
    file target is used as-is. Returns the written path.
    """
    wants_dir = str(target).endswith(("/", os.sep))
    target = Path(target)
    if wants_dir or target.is_dir():
        target.mkdir(parents=True, exist_ok=True)
        target = run_path(result.config, target)
    payload = {
        "schema_version": SCHEMA_VERSION,
        "created_at": datetime.now(timezone.utc).isoformat(),
        "result": result_to_dict(result),
    }
    _atomic_write(target, json.dumps(payload, indent=2) + "\n")
    return target


def read_run(path: str | Path) -> RunLogFile:
    """Load one run file, rejecting unknown schema versions."""
    with open(path, encoding="utf-8") as handle:
        payload = json.load(handle)
    version = payload.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(
            f"{path}: schema_version {version!r}, expected {SCHEMA_VERSION}")
    return RunLogFile(schema_version=version,
                      created_at=payload["created_at"],
                      result=result_from_dict(payload["result"]))


def replay_verify(run: RunLogFile | ExperimentResult,
                  evaluator: Evaluator = default_evaluator,
                  tolerance: float = REPLAY_TOLERANCE) -> tuple[str, ...]:
    """Recompute every stored score from its stored circuit.

    Returns one message per mismatch beyond `tolerance`; an empty tuple
    means the file is consistent with the simulator.
    """
    result = run.result if isinstance(run, RunLogFile) else run
    mismatches: list[str] = []

    def check(place: str, circuit: Circuit | None, stored: float | None):
        if circuit is None or stored is None:
            return
        recomputed = float(evaluator(circuit))
        if abs(recomputed - stored) > tolerance:
            mismatches.append(f"{place}: stored q={stored!r}, "
                              f"recomputed q={recomputed!r}")

    check("initial", result.initial_circuit, result.initial_q)
    for query in result.queries:
        prefix = f"query {query.query_index}"
        check(f"{prefix} start", query.start_circuit, query.start_q)
        for step in query.steps:
            if not step.rejected:
                check(f"{prefix} step {step.step_index}", step.circuit,
                      step.q)
        check(f"{prefix} best", query.best_circuit, query.best_q)
    check("best", result.best_circuit, result.best_q)
    return tuple(mismatches)
