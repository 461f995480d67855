"""Closed-loop synthesis of highly entangled quantum circuits.

An external proposer (language model, hill climber, or scripted replay)
iteratively edits a fixed-length gate list; a dense statevector simulator
scores each candidate by the Meyer-Wallach global entanglement measure and
feeds the change back into the next proposal.
"""

from .analyzer import (AnalysisReport, ComponentReport, InteractionGraph,
                       classify_components, interaction_graph, is_clifford,
                       summarize_components)
from .circuits import (AngleSet, Circuit, CircuitError, DEFAULT_ANGLES, Gate,
                       GATE_KINDS, Violation, as_rng, check_valid, cnot, h,
                       random_circuit, random_gate, relabel_wires, ry,
                       validate, validate_against_angle_set)
from .dsl import (ParseError, curate, load_circuit, parse, save_circuit,
                  serialize)
from .llm import (LlmParams, LlmProposer, PromptPair, ProtocolError,
                  TransportError, build_prompt, complete, format_feedback,
                  params_from_env)
from .optimizer import (ComparisonRow, ExperimentResult, OptimizerConfig,
                        QueryResult, StepRecord, compare_budget_matched,
                        default_evaluator, run_experiment, run_query)
from .proposers import (HillClimbProposer, HillClimbResult, ProposalContext,
                        ProposalOutcome, Proposer, ReplayProposer,
                        ScriptExhausted, hillclimb_mutate, hillclimb_run,
                        load_script, parse_proposal, replay_proposer,
                        save_script)
from .runstore import (RunLogFile, SchemaVersionError, read_run,
                       replay_verify, run_path, write_run)
from .sim import (MAX_QUBITS, MWReport, ResourceLimitError, StateVector,
                  apply_gate, evaluate, fidelity_up_to_phase, meyer_wallach,
                  meyer_wallach_oracle, qubit_purities, simulate,
                  states_equal_up_to_phase, zero_state)
from .tables import (TableRow, TableSpec, build_table, format_q,
                     render_delimited, render_table, render_text)

__version__ = "0.1.0"

__all__ = [
    "AngleSet", "AnalysisReport", "Circuit", "CircuitError", "ComparisonRow",
    "ComponentReport", "DEFAULT_ANGLES", "ExperimentResult", "GATE_KINDS",
    "Gate", "HillClimbProposer", "HillClimbResult", "InteractionGraph",
    "LlmParams", "LlmProposer", "MAX_QUBITS", "MWReport", "OptimizerConfig",
    "ParseError", "PromptPair", "ProposalContext", "ProposalOutcome",
    "Proposer", "ProtocolError", "QueryResult", "ReplayProposer",
    "ResourceLimitError", "RunLogFile", "SchemaVersionError",
    "ScriptExhausted", "StateVector", "StepRecord", "TableRow", "TableSpec",
    "TransportError", "Violation", "apply_gate", "as_rng", "build_prompt",
    "build_table", "check_valid", "classify_components", "cnot",
    "compare_budget_matched", "complete", "curate", "default_evaluator",
    "evaluate", "fidelity_up_to_phase", "format_feedback", "format_q", "h",
    "hillclimb_mutate", "hillclimb_run", "interaction_graph", "is_clifford",
    "load_circuit", "load_script", "meyer_wallach", "meyer_wallach_oracle",
    "params_from_env", "parse", "parse_proposal", "qubit_purities",
    "random_circuit", "random_gate", "read_run", "relabel_wires",
    "render_delimited", "render_table", "render_text", "replay_proposer",
    "replay_verify", "run_experiment", "run_path", "run_query", "ry",
    "save_circuit", "save_script", "serialize", "simulate",
    "states_equal_up_to_phase", "summarize_components", "validate",
    "validate_against_angle_set", "write_run", "zero_state",
]
