import numpy as np
import pytest

from cypol.modes import BeamParams, GridSpec


@pytest.fixture
def params():
    return BeamParams()


@pytest.fixture
def spec():
    return GridSpec()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion."""
    rows = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance" in rep.nodeid and rep.when == "call":
                name = rep.nodeid.split("::")[-1]
                rows.append((name, outcome == "passed"))
    if not rows:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, ok in sorted(rows):
        label = name.replace("test_", "")
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {label}")
