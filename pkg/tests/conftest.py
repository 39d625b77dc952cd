import json
from pathlib import Path

import pytest

from skgibbs import hermite_rule

GOLDENS = Path(__file__).parent / "goldens"


def load_golden(name):
    """Frozen reference values produced by gen_goldens.py."""
    return json.loads((GOLDENS / f"{name}.json").read_text())


@pytest.fixture(scope="session")
def rule61():
    return hermite_rule(61)


# ---- one summary line per acceptance criterion at the end of the run ----

_acceptance = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name, outcome in sorted(_acceptance):
        flag = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{flag}  {name}")
