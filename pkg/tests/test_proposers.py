"""Hill-climb mutations, budgeted local search, and the replay proposer."""

import numpy as np
import pytest

from entsynth.circuits import (DEFAULT_ANGLES, Circuit, CircuitError, as_rng,
                               cnot, h, random_circuit, ry)
from entsynth.dsl import ParseError, serialize
from entsynth.proposers import (MOVE_PROBABILITIES, HillClimbProposer,
                                ProposalContext, ProposalOutcome,
                                ReplayProposer, ScriptExhausted,
                                hillclimb_mutate, hillclimb_run, load_script,
                                parse_proposal, replay_proposer, save_script)
from entsynth.sim import evaluate


def make_context(circuit: Circuit, q: float = 0.0,
                 delta_q: float | None = None) -> ProposalContext:
    return ProposalContext(current_circuit=circuit, current_q=q,
                           delta_q=delta_q, step_index=0, query_index=0,
                           allowed_angles=DEFAULT_ANGLES,
                           gate_budget=circuit.num_gates)


def mw_evaluator(circuit: Circuit) -> float:
    return evaluate(circuit).q


# move distribution constants


def test_move_probabilities():
    assert MOVE_PROBABILITIES == {"replace": 0.5, "rewire": 0.4, "swap": 0.1}
    assert sum(MOVE_PROBABILITIES.values()) == pytest.approx(1.0)


# parse_proposal


def test_parse_proposal_valid():
    circuit = parse_proposal("[('H', [0]), ('CNOT', [0, 1])]", 2)
    assert isinstance(circuit, Circuit)
    assert circuit.num_gates == 2


def test_parse_proposal_curates_first():
    raw = "Here you go:\n```python\n[('H', [0])]\n```\n"
    circuit = parse_proposal(raw, 1)
    assert isinstance(circuit, Circuit)


def test_parse_proposal_returns_parse_error():
    result = parse_proposal("no circuit here", 2)
    assert isinstance(result, ParseError)


def test_parse_proposal_returns_circuit_error():
    result = parse_proposal("[('H', [7])]", 2)
    assert isinstance(result, CircuitError)


def test_outcome_ok_and_failure():
    good = ProposalOutcome("[('H', [0])]", Circuit(1, (h(0),)), 0.0, "x")
    assert good.ok and good.failure is None
    bad = ProposalOutcome("junk", ParseError("no-list-found", 0, "nope"),
                          0.0, "x")
    assert not bad.ok
    assert "no-list-found" in bad.failure


# hillclimb_mutate


def test_mutate_preserves_count_and_validity():
    rng = as_rng(4)
    circuit = random_circuit(6, 8, rng=rng)
    palette = set(DEFAULT_ANGLES)
    for _ in range(200):
        mutated = hillclimb_mutate(circuit, DEFAULT_ANGLES, rng)
        assert mutated.num_gates == circuit.num_gates
        assert mutated.num_qubits == circuit.num_qubits
        assert mutated.gates != circuit.gates
        for gate in mutated.gates:
            if gate.kind == "RY":
                assert gate.angle in palette
        circuit = mutated


def test_mutate_single_gate_circuit():
    rng = as_rng(11)
    circuit = Circuit(3, (h(1),))
    for _ in range(50):
        mutated = hillclimb_mutate(circuit, DEFAULT_ANGLES, rng)
        assert mutated.num_gates == 1
        assert mutated.gates != circuit.gates


def test_mutate_deterministic_under_seed():
    circuit = random_circuit(5, 6, rng=as_rng(0))
    a = hillclimb_mutate(circuit, DEFAULT_ANGLES, as_rng(42))
    b = hillclimb_mutate(circuit, DEFAULT_ANGLES, as_rng(42))
    assert a == b


def test_mutate_exercises_all_move_kinds():
    rng = as_rng(7)
    circuit = random_circuit(6, 10, rng=as_rng(1))
    swaps = rewires = replaces = 0
    for _ in range(300):
        mutated = hillclimb_mutate(circuit, DEFAULT_ANGLES, rng)
        changed = [i for i, (a, b) in
                   enumerate(zip(circuit.gates, mutated.gates)) if a != b]
        if sorted(circuit.gates, key=repr) == sorted(mutated.gates, key=repr):
            swaps += 1
        elif len(changed) == 1:
            old, new = circuit.gates[changed[0]], mutated.gates[changed[0]]
            if old.kind == new.kind and old.angle == new.angle:
                rewires += 1
            else:
                replaces += 1
    assert swaps > 5
    assert rewires > 30
    assert replaces > 30


# hillclimb_run


def test_run_spends_exact_budget_including_initial():
    calls = []

    def counting(circuit):
        calls.append(circuit)
        return evaluate(circuit).q

    start = random_circuit(3, 4, rng=as_rng(5))
    result = hillclimb_run(start, 10, DEFAULT_ANGLES, 0, counting)
    assert len(calls) == 10
    assert calls[0] == start
    assert len(result.candidate_qs) == 9


def test_run_spends_exact_budget_with_precomputed_initial():
    calls = []

    def counting(circuit):
        calls.append(circuit)
        return evaluate(circuit).q

    start = random_circuit(3, 4, rng=as_rng(5))
    q0 = evaluate(start).q
    result = hillclimb_run(start, 10, DEFAULT_ANGLES, 0, counting,
                           initial_q=q0)
    assert len(calls) == 10
    assert len(result.candidate_qs) == 10
    assert result.initial_q == q0


def test_run_rejects_zero_budget():
    with pytest.raises(ValueError):
        hillclimb_run(Circuit(2, (h(0),)), 0, DEFAULT_ANGLES, 0, mw_evaluator)


def test_run_budget_one_scores_start_only():
    start = Circuit(2, (h(0), cnot(0, 1)))
    result = hillclimb_run(start, 1, DEFAULT_ANGLES, 0, mw_evaluator)
    assert result.candidate_qs == ()
    assert result.best_circuit == start
    assert result.best_q == pytest.approx(1.0, abs=1e-12)


def test_run_accepts_only_strict_improvement():
    start = random_circuit(4, 5, rng=as_rng(2))
    result = hillclimb_run(start, 20, DEFAULT_ANGLES, 3, lambda c: 0.5)
    assert result.best_circuit == start
    assert result.best_q == 0.5
    assert all(q == 0.5 for q in result.incumbent_qs)


def test_run_acceptance_trace_monotone():
    start = random_circuit(4, 6, rng=as_rng(6))
    result = hillclimb_run(start, 40, DEFAULT_ANGLES, 1, mw_evaluator)
    trace = (result.initial_q,) + result.incumbent_qs
    assert all(a <= b for a, b in zip(trace, trace[1:]))
    assert result.best_q == max([result.initial_q, *result.candidate_qs])
    assert result.incumbent_qs[-1] == result.best_q


def test_run_escapes_product_state():
    start = Circuit(2, (h(0), h(1)))
    result = hillclimb_run(start, 30, DEFAULT_ANGLES, 0, mw_evaluator)
    assert result.initial_q == pytest.approx(0.0, abs=1e-12)
    assert result.best_q == pytest.approx(1.0, abs=1e-9)


def test_run_deterministic_under_seed():
    start = random_circuit(4, 5, rng=as_rng(9))
    a = hillclimb_run(start, 15, DEFAULT_ANGLES, 21, mw_evaluator)
    b = hillclimb_run(start, 15, DEFAULT_ANGLES, 21, mw_evaluator)
    assert a == b


# HillClimbProposer


def test_hillclimb_proposer_mutates_context_circuit():
    proposer = HillClimbProposer(rng=as_rng(0))
    assert proposer.proposer_id == "hillclimb"
    circuit = random_circuit(5, 6, rng=as_rng(3))
    outcome = proposer.propose(make_context(circuit))
    assert outcome.ok
    assert outcome.proposer_id == "hillclimb"
    assert outcome.parsed.num_gates == circuit.num_gates
    assert outcome.parsed.gates != circuit.gates
    assert outcome.raw_text == serialize(outcome.parsed)
    assert outcome.latency >= 0.0


def test_hillclimb_proposer_deterministic():
    circuit = random_circuit(5, 6, rng=as_rng(3))
    first = HillClimbProposer(rng=as_rng(8)).propose(make_context(circuit))
    second = HillClimbProposer(rng=as_rng(8)).propose(make_context(circuit))
    assert first.parsed == second.parsed


# ReplayProposer


def test_replay_in_order_then_exhausted():
    proposer = replay_proposer(["[('H', [0])]", "not a circuit"])
    assert proposer.proposer_id == "replay"
    context = make_context(Circuit(2, (h(0), h(1))))

    first = proposer.propose(context)
    assert first.ok
    assert first.raw_text == "[('H', [0])]"

    second = proposer.propose(context)
    assert not second.ok
    assert isinstance(second.parsed, ParseError)

    third = proposer.propose(context)
    assert not third.ok
    assert isinstance(third.parsed, ScriptExhausted)
    assert third.raw_text == ""
    assert "exhausted" in third.failure


def test_replay_proposer_custom_id():
    proposer = ReplayProposer(["[('H', [0])]"], proposer_id="scripted")
    outcome = proposer.propose(make_context(Circuit(1, (h(0),))))
    assert outcome.proposer_id == "scripted"


# script files


def test_script_round_trip(tmp_path):
    entries = ("first", "two\nlines here", "[('H', [0])]")
    path = tmp_path / "script.txt"
    save_script(entries, path)
    assert load_script(path) == entries


def test_script_separator_tolerates_padding(tmp_path):
    path = tmp_path / "script.txt"
    path.write_text("alpha\n  ---  \nbeta\n", encoding="utf-8")
    assert load_script(path) == ("alpha", "beta")


def test_script_trailing_blank_lines_dropped(tmp_path):
    path = tmp_path / "script.txt"
    path.write_text("alpha\n---\nbeta\n---\n\n  \n", encoding="utf-8")
    assert load_script(path) == ("alpha", "beta")


def test_script_preserves_empty_middle_entry(tmp_path):
    path = tmp_path / "script.txt"
    path.write_text("alpha\n---\n---\nbeta\n", encoding="utf-8")
    assert load_script(path) == ("alpha", "", "beta")
