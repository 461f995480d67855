"""Gate/circuit model: validation, angle policy, random sampling."""

import numpy as np
import pytest

from entsynth.circuits import (Circuit, CircuitError, DEFAULT_ANGLES, Gate,
                               as_rng, check_valid, cnot, h, random_circuit,
                               random_gate, relabel_wires, ry, validate,
                               validate_against_angle_set)
from entsynth.optimizer import default_evaluator


def test_gate_helpers():
    assert h(3) == Gate("H", (3,))
    assert ry(25.0, 2) == Gate("RY", (2,), 25.0)
    assert cnot(0, 12) == Gate("CNOT", (0, 12))


def test_validate_ok_minimal():
    circuit = Circuit(2, (h(0), cnot(0, 1)))
    assert validate(circuit) == []


def test_validate_cnot_control_equals_target():
    violations = validate(Circuit(2, (Gate("CNOT", (0, 0)),)))
    assert len(violations) == 1
    assert violations[0].gate_index == 0
    assert "control" in violations[0].message


def test_validate_wire_out_of_range():
    violations = validate(Circuit(25, (Gate("H", (25,)),)))
    assert len(violations) == 1
    assert "25" in violations[0].message


def test_validate_fixture_circuit_ok(ghz_blocks):
    assert validate(ghz_blocks) == []
    assert ghz_blocks.num_gates == 25


def test_validate_rejects_bool_wires():
    violations = validate(Circuit(2, (Gate("H", (True,)),)))
    assert violations


def test_validate_missing_angle():
    violations = validate(Circuit(2, (Gate("RY", (0,)),)))
    assert violations


def test_validate_angle_on_clifford_gate():
    violations = validate(Circuit(2, (Gate("H", (0,), 3.0),)))
    assert violations


def test_check_valid_raises_with_violations():
    with pytest.raises(CircuitError) as excinfo:
        check_valid(Circuit(2, (Gate("CNOT", (0, 0)),)))
    assert excinfo.value.violations


def test_angle_set_member_ok():
    circuit = Circuit(3, (ry(10.0, 2),))
    assert validate_against_angle_set(circuit, DEFAULT_ANGLES) == []


def test_angle_set_violation():
    circuit = Circuit(3, (ry(7.0, 2),))
    violations = validate_against_angle_set(circuit, DEFAULT_ANGLES)
    assert len(violations) == 1
    assert violations[0].gate_index == 0


def test_angle_set_alternate_palette():
    circuit = Circuit(2, (ry(0.42, 1),))
    assert validate_against_angle_set(circuit, (0.1, 0.42, 1.0)) == []


def test_random_circuit_deterministic():
    a = random_circuit(20, 25, rng=as_rng(11))
    b = random_circuit(20, 25, rng=as_rng(11))
    assert a == b


def test_random_circuit_valid_and_on_palette():
    for seed in range(25):
        circuit = random_circuit(25, 25, rng=as_rng(seed))
        assert circuit.num_gates == 25
        assert validate(circuit) == []
        assert validate_against_angle_set(circuit, DEFAULT_ANGLES) == []


def test_random_circuit_parameter_errors():
    with pytest.raises(ValueError):
        random_circuit(1, 5)
    with pytest.raises(ValueError):
        random_circuit(3, 0)


def test_random_gate_single_qubit_register_avoids_cnot():
    rng = as_rng(0)
    kinds = {random_gate(1, DEFAULT_ANGLES, rng).kind for _ in range(50)}
    assert "CNOT" not in kinds
    assert kinds <= {"H", "RY"}


def test_gate_order_is_significant():
    a = Circuit(2, (h(0), cnot(0, 1)))
    b = Circuit(2, (cnot(0, 1), h(0)))
    assert a != b


def test_relabel_wires_requires_permutation():
    circuit = Circuit(3, (cnot(0, 2),))
    with pytest.raises(ValueError):
        relabel_wires(circuit, [0, 0, 1])
    swapped = relabel_wires(circuit, [2, 1, 0])
    assert swapped.gates[0] == cnot(2, 0)


@pytest.mark.slow
def test_random_circuit_mean_mw_at_benchmark_scale():
    rng = as_rng(20250817)
    qs = [default_evaluator(random_circuit(25, 25, rng=rng))
          for _ in range(100)]
    mean = float(np.mean(qs))
    assert 0.0 <= mean <= 0.6
