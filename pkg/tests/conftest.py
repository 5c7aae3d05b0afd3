from __future__ import annotations

import pytest

from helpers import ERP_FRAGMENT
from mvpmodels.event_log import DatabaseEventLog, load_csv

# Filled by test_acceptance.py, printed at the end of the run.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def erp_log() -> DatabaseEventLog:
    return load_csv(ERP_FRAGMENT)


@pytest.fixture
def chain_log() -> DatabaseEventLog:
    """Two objects of one class walking A-B-C and A-B-D."""
    act_of = {"e1": "A", "e2": "B", "e3": "C", "e4": "A", "e5": "B", "e6": "D"}
    times = {e: 1000 * i for i, e in enumerate(sorted(act_of))}
    eo = {("e1", "o1"), ("e2", "o1"), ("e3", "o1"), ("e4", "o2"), ("e5", "o2"), ("e6", "o2")}
    return DatabaseEventLog.create(act_of, times, {"o1": "order", "o2": "order"}, eo)
