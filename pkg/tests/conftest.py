from pathlib import Path

import pytest

from alphatrace.nondet import lts_from_names, make_lts_instance
from alphatrace.sysfile import load_system

SYSTEMS = Path(__file__).resolve().parent.parent / "systems"
GOLDEN = Path(__file__).resolve().parent / "golden"

BRANCHING_STATES = ("s0", "s10", "s11", "s20", "s21", "t0", "t1", "t20", "t21")
BRANCHING_TRANS = [
    ("s0", "a", "s10"), ("s0", "a", "s11"), ("s10", "b", "s20"), ("s11", "c", "s21"),
    ("t0", "a", "t1"), ("t1", "b", "t20"), ("t1", "c", "t21"),
]


@pytest.fixture
def branching():
    return lts_from_names("abc", BRANCHING_STATES, BRANCHING_TRANS)


@pytest.fixture
def branching_inst(branching):
    return make_lts_instance(branching)


@pytest.fixture
def nfa_tree():
    return load_system(SYSTEMS / "nfa_tree.sys")[1]


@pytest.fixture
def two_state_gps():
    return load_system(SYSTEMS / "two_state.gps")[1]


@pytest.fixture
def fsig():
    return load_system(SYSTEMS / "fsig.sys")[1]


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
