"""Figure rendering for run reports.

Writes static matplotlib files: per-run score trajectories and per-qubit
purity profiles of the best circuit. Used by the report command, which
places the figures next to the delimited table output.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .optimizer import ExperimentResult
from .runstore import RunLogFile
from .sim import evaluate
from .tables import build_table, render_delimited, render_text


def _result_of(run: RunLogFile | ExperimentResult) -> ExperimentResult:
    return run.result if isinstance(run, RunLogFile) else run


def plot_trajectory(run: RunLogFile | ExperimentResult,
                    path: str | Path) -> Path:
    """Candidate scores and the running best across all queries."""
    result = _result_of(run)
    xs, qs, bests = [0], [result.initial_q], [result.initial_q]
    boundaries = []
    best = result.initial_q
    evaluation = 0
    for query in result.queries:
        boundaries.append(evaluation + 0.5 if evaluation else 0.5)
        for step in query.steps:
            if step.q is None:
                continue
            evaluation += 1
            best = max(best, step.q)
            xs.append(evaluation)
            qs.append(step.q)
            bests.append(best)
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(xs, qs, marker="o", markersize=3, linewidth=1,
            color="tab:blue", label="candidate")
    ax.step(xs, bests, where="post", color="tab:red", linewidth=1.5,
            label="best so far")
    for boundary in boundaries[1:]:
        ax.axvline(boundary, color="gray", linestyle=":", linewidth=0.8)
    ax.set_xlabel("evaluation")
    ax.set_ylabel("MW measure Q")
    ax.set_ylim(-0.05, 1.05)
    ax.legend(loc="lower right")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_purities(run: RunLogFile | ExperimentResult,
                  path: str | Path) -> Path:
    """Per-qubit purity bars for the run's best circuit."""
    result = _result_of(run)
    report = evaluate(result.best_circuit)
    fig, ax = plt.subplots(figsize=(7, 3.2))
    ax.bar(range(len(report.purities)), report.purities, color="tab:blue")
    ax.axhline(0.5, color="tab:red", linestyle="--", linewidth=1,
               label="maximally mixed")
    ax.set_xlabel("qubit")
    ax.set_ylabel("purity")
    ax.set_ylim(0, 1.05)
    ax.set_title(f"Q = {report.q:.4f}")
    ax.legend(loc="lower right")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def write_report(runs, out_dir: str | Path, labels=None) -> list[Path]:
    """Render a batch of runs: delimited table, text table, and figures.

    Returns every path written, table files first.
    """
    runs = list(runs)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    table = build_table(runs, labels)
    written = []
    tsv = out_dir / "runs.tsv"
    tsv.write_text(render_delimited(table) + "\n", encoding="utf-8")
    written.append(tsv)
    txt = out_dir / "runs.txt"
    txt.write_text(render_text(table) + "\n", encoding="utf-8")
    written.append(txt)
    for run, row in zip(runs, table.rows):
        written.append(plot_trajectory(
            run, out_dir / f"trajectory-{row.label}.png"))
        written.append(plot_purities(
            run, out_dir / f"purities-{row.label}.png"))
    return written
