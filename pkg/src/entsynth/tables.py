"""Compact text tables of experiment trajectories.

One row per run: the initial MW measure, then one cell per configured
query. A cell shows "start→best" when the query improved on its start,
"no improv." when it did not, and "done" for query slots skipped after an
early stop at the maximal measure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .optimizer import ExperimentResult
from .runstore import RunLogFile

NO_IMPROVEMENT = "no improv."
DONE = "done"
ARROW = "→"


def format_q(value: float) -> str:
    """Round to 2 decimals and drop trailing zeros: 1.00 -> 1, 0.80 -> 0.8."""
    text = f"{value:.2f}"
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return "0" if text in ("", "-0") else text


@dataclass(frozen=True)
class TableRow:
    """One run's rendered trajectory."""

    label: str
    initial_q: float
    cells: tuple[str, ...]


@dataclass(frozen=True)
class TableSpec:
    """Rows plus the query-column count they share."""

    num_queries: int
    rows: tuple[TableRow, ...]


def _result_of(run: RunLogFile | ExperimentResult) -> ExperimentResult:
    return run.result if isinstance(run, RunLogFile) else run


def build_row(run: RunLogFile | ExperimentResult, label: str) -> TableRow:
    """Render one run's query cells."""
    result = _result_of(run)
    cells = []
    for query in result.queries:
        if query.improved:
            cells.append(f"{format_q(query.start_q)}{ARROW}"
                         f"{format_q(query.best_q)}")
        else:
            cells.append(NO_IMPROVEMENT)
    while len(cells) < result.config.queries:
        cells.append(DONE if result.early_stopped else NO_IMPROVEMENT)
    return TableRow(label, result.initial_q, tuple(cells))


def build_table(runs, labels=None) -> TableSpec:
    """Assemble rows for a batch of runs; labels default to A, B, C, ..."""
    runs = list(runs)
    if labels is None:
        labels = [_default_label(i) for i in range(len(runs))]
    rows = tuple(build_row(run, str(label))
                 for run, label in zip(runs, labels))
    num_queries = max((len(row.cells) for row in rows), default=0)
    return TableSpec(num_queries, rows)


def _default_label(index: int) -> str:
    label = ""
    index += 1
    while index:
        index, rem = divmod(index - 1, 26)
        label = chr(ord("A") + rem) + label
    return label


def render_text(table: TableSpec) -> str:
    """Fixed-width text rendering with a header row."""
    header = ["run", "initial q"] + [f"query {i + 1}"
                                     for i in range(table.num_queries)]
    body = [[row.label, format_q(row.initial_q)] + list(row.cells)
            + [""] * (table.num_queries - len(row.cells))
            for row in table.rows]
    widths = [max(len(line[col]) for line in [header] + body)
              for col in range(len(header))]
    lines = []
    for line in [header] + body:
        lines.append("  ".join(cell.ljust(width)
                               for cell, width in zip(line, widths)).rstrip())
    return "\n".join(lines)


def render_table(runs, labels=None) -> tuple[TableSpec, str]:
    """Build and render in one call; returns (spec, text)."""
    table = build_table(runs, labels)
    return table, render_text(table)


def render_delimited(table: TableSpec, delimiter: str = "\t") -> str:
    """Machine-readable rendering, one run per line."""
    header = ["run", "initial_q"] + [f"query_{i + 1}"
                                     for i in range(table.num_queries)]
    lines = [delimiter.join(header)]
    for row in table.rows:
        cells = list(row.cells) + [""] * (table.num_queries - len(row.cells))
        lines.append(delimiter.join([row.label, format_q(row.initial_q)]
                                    + cells))
    return "\n".join(lines)
