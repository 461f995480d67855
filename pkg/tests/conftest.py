"""Shared fixtures: the 25-qubit fixture circuits and their cached scores."""

from __future__ import annotations

from pathlib import Path

import pytest

from entsynth.dsl import load_circuit
from entsynth.sim import evaluate

FIXTURE_DIR = Path(__file__).parent / "fixtures"

BELL_PAIRS_GHZ3 = FIXTURE_DIR / "bell-pairs-ghz3-n25.txt"
NEAR_CLIFFORD = FIXTURE_DIR / "near-clifford-n25.txt"
GHZ_BLOCKS = FIXTURE_DIR / "ghz-blocks-n25.txt"
MIXED_GHZ_BELL = FIXTURE_DIR / "mixed-ghz-bell-n25.txt"

ALL_FIXTURE_FILES = (BELL_PAIRS_GHZ3, NEAR_CLIFFORD, GHZ_BLOCKS,
                     MIXED_GHZ_BELL)


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run tests marked slow (long 25-qubit batches)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURE_DIR


@pytest.fixture(scope="session")
def bell_pairs_ghz3():
    """25 gates, n=25: eleven Bell pairs plus a 3-qubit GHZ, all Clifford."""
    return load_circuit(BELL_PAIRS_GHZ3, 25)


@pytest.fixture(scope="session")
def near_clifford():
    """36 gates, n=25: one fully connected component with a few rotations."""
    return load_circuit(NEAR_CLIFFORD, 25)


@pytest.fixture(scope="session")
def ghz_blocks():
    """25 gates, n=25: two GHZ_6, two GHZ_4, and five |+> singletons."""
    return load_circuit(GHZ_BLOCKS, 25)


@pytest.fixture(scope="session")
def mixed_ghz_bell():
    """24 gates, n=25: GHZ blocks, Bell pairs, a rotated pair, singletons."""
    return load_circuit(MIXED_GHZ_BELL, 25)


@pytest.fixture(scope="session")
def ghz_blocks_report(ghz_blocks):
    return evaluate(ghz_blocks)


@pytest.fixture(scope="session")
def mixed_ghz_bell_report(mixed_ghz_bell):
    return evaluate(mixed_ghz_bell)


@pytest.fixture(scope="session")
def bell_pairs_ghz3_report(bell_pairs_ghz3):
    return evaluate(bell_pairs_ghz3)


@pytest.fixture(scope="session")
def near_clifford_report(near_clifford):
    return evaluate(near_clifford)
