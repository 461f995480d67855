"""Trajectory-table rendering: cells, labels, text and delimited output."""

import pytest

from entsynth.circuits import Circuit, cnot, h
from entsynth.optimizer import (ExperimentResult, OptimizerConfig,
                                QueryResult)
from entsynth.runstore import RunLogFile
from entsynth.tables import (ARROW, DONE, NO_IMPROVEMENT, build_row,
                             build_table, format_q, render_delimited,
                             render_table, render_text)

CIRC = Circuit(2, (h(0), cnot(0, 1)))


def make_result(initial_q, query_data, *, queries_configured=None,
                early_stopped=False):
    """Synthesize a result whose queries have the given (start, best) pairs."""
    if queries_configured is None:
        queries_configured = max(len(query_data), 1)
    config = OptimizerConfig(num_qubits=2, gate_budget=2,
                             queries=queries_configured, steps_per_query=1,
                             initial_circuit=CIRC)
    query_results = tuple(
        QueryResult(i, CIRC, start_q, (), CIRC, best_q, 1)
        for i, (start_q, best_q) in enumerate(query_data))
    best_q = max([initial_q] + [best for _, best in query_data])
    return ExperimentResult(config, CIRC, initial_q, query_results, CIRC,
                            best_q, len(query_data), early_stopped)


# format_q


@pytest.mark.parametrize("value,expected", [
    (0.47, "0.47"),
    (0.8, "0.8"),
    (1.0, "1"),
    (0.0, "0"),
    (-0.0001, "0"),
    (0.663676, "0.66"),
    (0.05, "0.05"),
    (0.999, "1"),
])
def test_format_q(value, expected):
    assert format_q(value) == expected


# build_row


def test_row_improvement_cells():
    result = make_result(0.47, [(0.47, 0.48), (0.48, 0.66), (0.66, 1.0)])
    row = build_row(result, "A")
    assert row.cells == (f"0.47{ARROW}0.48", f"0.48{ARROW}0.66",
                         f"0.66{ARROW}1")
    assert row.initial_q == 0.47


def test_row_no_improvement_cell():
    result = make_result(0.5, [(0.5, 0.5)])
    assert build_row(result, "A").cells == (NO_IMPROVEMENT,)


def test_row_early_stop_pads_with_done():
    result = make_result(0.4, [(0.4, 1.0)], queries_configured=3,
                         early_stopped=True)
    assert build_row(result, "A").cells == (f"0.4{ARROW}1", DONE, DONE)


def test_row_unfinished_pads_with_no_improvement():
    result = make_result(0.4, [(0.4, 0.5)], queries_configured=3)
    assert build_row(result, "A").cells == (f"0.4{ARROW}0.5", NO_IMPROVEMENT,
                                            NO_IMPROVEMENT)


def test_row_accepts_run_log_file():
    result = make_result(0.4, [(0.4, 0.9)])
    wrapped = RunLogFile(1, "2026-08-17T00:00:00+00:00", result)
    assert build_row(wrapped, "X") == build_row(result, "X")


# build_table


def test_table_default_labels():
    runs = [make_result(0.1, [(0.1, 0.2)]) for _ in range(28)]
    table = build_table(runs)
    labels = [row.label for row in table.rows]
    assert labels[:3] == ["A", "B", "C"]
    assert labels[25] == "Z"
    assert labels[26] == "AA"
    assert labels[27] == "AB"


def test_table_explicit_labels():
    runs = [make_result(0.1, [(0.1, 0.2)])]
    table = build_table(runs, labels=["baseline"])
    assert table.rows[0].label == "baseline"


def test_table_query_count_is_row_maximum():
    short = make_result(0.1, [(0.1, 0.2)])
    long = make_result(0.1, [(0.1, 0.2), (0.2, 0.3), (0.3, 0.4)])
    table = build_table([short, long])
    assert table.num_queries == 3


def test_table_empty():
    table = build_table([])
    assert table.num_queries == 0
    assert table.rows == ()


# rendering


def test_render_text_exact():
    result = make_result(0.47, [(0.47, 0.48), (0.48, 0.66), (0.66, 1.0)])
    _, text = render_table([result])
    expected = ("run  initial q  query 1    query 2    query 3\n"
                f"A    0.47       0.47{ARROW}0.48  0.48{ARROW}0.66  "
                f"0.66{ARROW}1")
    assert text == expected


def test_render_text_pads_shorter_rows():
    short = make_result(0.2, [(0.2, 0.3)])
    long = make_result(0.1, [(0.1, 0.2), (0.2, 0.9)])
    text = render_text(build_table([short, long]))
    lines = text.splitlines()
    assert lines[0].split() == ["run", "initial", "q", "query", "1",
                                "query", "2"]
    assert not lines[1].endswith(" ")  # trailing blanks are stripped


def test_render_delimited_tab():
    result = make_result(0.4, [(0.4, 1.0)], queries_configured=2,
                         early_stopped=True)
    text = render_delimited(build_table([result]))
    lines = text.splitlines()
    assert lines[0] == "run\tinitial_q\tquery_1\tquery_2"
    assert lines[1] == f"A\t0.4\t0.4{ARROW}1\t{DONE}"


def test_render_delimited_custom_delimiter():
    result = make_result(0.4, [(0.4, 0.9)])
    text = render_delimited(build_table([result]), delimiter=",")
    assert text.splitlines()[0] == "run,initial_q,query_1"


def test_render_table_returns_spec_and_text():
    result = make_result(0.3, [(0.3, 0.6)])
    spec, text = render_table([result], labels=["r1"])
    assert spec.rows[0].label == "r1"
    assert text.startswith("run")
