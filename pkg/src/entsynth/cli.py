"""Command-line interface.

Subcommands: eval, random, synth, baseline, analyze, table, replay-verify,
report. Every command exits 0 on success and nonzero with a diagnostic
naming the failing error type otherwise.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .analyzer import classify_components, summarize_components
from .circuits import (CircuitError, DEFAULT_ANGLES, as_rng, random_circuit)
from .dsl import ParseError, load_circuit, save_circuit
from .llm import LlmProposer, ProtocolError, TransportError, params_from_env
from .optimizer import (OptimizerConfig, default_evaluator, run_experiment)
from .proposers import (HillClimbProposer, ReplayProposer, hillclimb_run,
                        load_script)
from .runstore import (SchemaVersionError, read_run, replay_verify,
                       write_run)
from .sim import ResourceLimitError, evaluate
from .tables import render_table

_ERRORS = (ParseError, CircuitError, ResourceLimitError, SchemaVersionError,
           TransportError, ProtocolError, OSError, ValueError)


def _parse_angles(text: str | None) -> tuple[float, ...]:
    if not text:
        return DEFAULT_ANGLES
    try:
        angles = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise ValueError(f"bad --angles value {text!r}: {exc}") from exc
    if not angles:
        raise ValueError("--angles needs at least one angle")
    return angles


def cmd_eval(args) -> int:
    circuit = load_circuit(args.circuit, args.qubits)
    report = evaluate(circuit, precision=args.precision)
    print(f"q = {report.q:.4f}")
    for qubit, purity in enumerate(report.purities):
        print(f"qubit {qubit}: purity = {purity:.6f}")
    return 0


def cmd_random(args) -> int:
    circuit = random_circuit(args.qubits, args.gates,
                             angles=_parse_angles(args.angles),
                             rng=as_rng(args.seed))
    save_circuit(circuit, args.out)
    print(f"wrote {args.out} ({circuit.num_qubits} qubits, "
          f"{circuit.num_gates} gates)")
    return 0


def _build_proposer(args, feedback_enabled: bool):
    if args.proposer == "hillclimb":
        return HillClimbProposer(rng=as_rng(args.seed))
    if args.proposer == "replay":
        if not args.script:
            raise ValueError("--proposer replay requires --script FILE")
        return ReplayProposer(load_script(args.script))
    params = params_from_env(args.base_url, args.model, args.api_key,
                             temperature=args.temperature,
                             timeout=args.timeout,
                             max_retries=args.max_retries)
    return LlmProposer(params, feedback_enabled=feedback_enabled)


def cmd_synth(args) -> int:
    angles = _parse_angles(args.angles)
    if args.init:
        initial = load_circuit(args.init, args.qubits)
        if initial.num_gates != args.gates:
            raise ValueError(f"--init circuit has {initial.num_gates} gates "
                             f"but --gates is {args.gates}")
    else:
        initial = "random"
    config = OptimizerConfig(
        num_qubits=args.qubits, gate_budget=args.gates, angle_set=angles,
        queries=args.queries, steps_per_query=args.steps,
        feedback_enabled=args.feedback, proposer=args.proposer,
        seed=args.seed, initial_circuit=initial)
    proposer = _build_proposer(args, args.feedback)
    result = run_experiment(config, proposer)
    path = write_run(result, args.out)
    print(f"initial q = {result.initial_q:.4f}")
    print(f"best q = {result.best_q:.4f}")
    print(f"evaluations = {result.evaluations}")
    if result.early_stopped:
        print("done: reached the maximal MW measure")
    print(f"wrote {path}")
    return 0


def cmd_baseline(args) -> int:
    angles = _parse_angles(args.angles)
    base_seed = 0 if args.seed is None else args.seed
    best_overall = None
    for index in range(args.runs):
        seed = base_seed + index
        initial = random_circuit(args.qubits, args.gates, angles=angles,
                                 rng=as_rng(seed))
        result = hillclimb_run(initial, args.budget, angles, seed,
                               default_evaluator)
        best_overall = (result.best_q if best_overall is None
                        else max(best_overall, result.best_q))
        print(f"run {index}: seed {seed}  "
              f"initial q = {result.initial_q:.4f}  "
              f"best q = {result.best_q:.4f}")
    print(f"max best q = {best_overall:.4f}")
    return 0


def cmd_analyze(args) -> int:
    circuit = load_circuit(args.circuit, args.qubits)
    report = classify_components(circuit)
    print(f"q = {report.mw.q:.4f}")
    print(f"clifford = {'yes' if report.clifford else 'no'}")
    for component in report.components:
        qubits = "{" + ", ".join(str(q) for q in component.qubits) + "}"
        line = f"component {qubits}: {component.label}"
        if component.label != "UNCLASSIFIED":
            line += f" (fidelity {component.fidelity:.6f})"
        if component.theta is not None:
            line += f" (theta {component.theta:.6f})"
        if component.reason:
            line += f" ({component.reason})"
        print(line)
    print(summarize_components(report))
    return 0


def cmd_table(args) -> int:
    runs = [read_run(path) for path in args.runs]
    labels = [_label_for(path) for path in args.runs]
    _, text = render_table(runs, labels)
    print(text)
    return 0


def _label_for(path: str) -> str:
    return Path(path).stem


def cmd_replay_verify(args) -> int:
    run = read_run(args.run)
    mismatches = replay_verify(run)
    if mismatches:
        for mismatch in mismatches:
            print(f"mismatch: {mismatch}")
        return 1
    print("ok: every stored score reproduced by the simulator")
    return 0


def cmd_report(args) -> int:
    from .figures import write_report

    runs = [read_run(path) for path in args.runs]
    labels = [_label_for(path) for path in args.runs]
    for path in write_report(runs, args.out, labels):
        print(f"wrote {path}")
    return 0


def _add_llm_flags(parser) -> None:
    parser.add_argument("--base-url", default=None,
                        help="chat endpoint base URL (or LLM_BASE_URL)")
    parser.add_argument("--model", default=None,
                        help="model name (or LLM_MODEL)")
    parser.add_argument("--api-key", default=None,
                        help="bearer token (or LLM_API_KEY)")
    parser.add_argument("--temperature", type=float, default=0.7)
    parser.add_argument("--timeout", type=float, default=60.0)
    parser.add_argument("--max-retries", type=int, default=3)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entsynth",
        description="Closed-loop synthesis of highly entangled circuits "
                    "with a dense statevector evaluator.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="score a circuit file")
    p.add_argument("--circuit", required=True, help="gate-list file")
    p.add_argument("--qubits", type=int, default=None,
                   help="qubit count (default: inferred from the wires)")
    p.add_argument("--precision", choices=("double", "single"),
                   default="double")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("random", help="write a random circuit file")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--gates", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--angles", default=None,
                   help="comma-separated RY angles (default 3.0,10.0,25.0)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("synth", help="run one synthesis experiment")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--gates", type=int, required=True)
    p.add_argument("--queries", type=int, default=3)
    p.add_argument("--steps", type=int, default=15)
    p.add_argument("--proposer", required=True,
                   choices=("llm", "hillclimb", "replay"))
    p.add_argument("--feedback", action=argparse.BooleanOptionalAction,
                   default=True,
                   help="include the score-change sentence in prompts")
    p.add_argument("--angles", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--init", default=None,
                   help="start circuit file (default: seeded random)")
    p.add_argument("--out", required=True,
                   help="run file or directory for the run record")
    p.add_argument("--script", default=None,
                   help="replay proposer script file")
    _add_llm_flags(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("baseline", help="budgeted hill-climb runs")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--gates", type=int, required=True)
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--runs", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--angles", default=None)
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("analyze", help="classify a circuit's state structure")
    p.add_argument("--circuit", required=True)
    p.add_argument("--qubits", type=int, default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("table", help="render a trajectory table from runs")
    p.add_argument("runs", nargs="+", help="run files")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("replay-verify",
                       help="recompute every score stored in a run file")
    p.add_argument("run", help="run file")
    p.set_defaults(func=cmd_replay_verify)

    p = sub.add_parser("report",
                       help="write table files and figures for runs")
    p.add_argument("runs", nargs="+", help="run files")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
