"""Terminal summary for the acceptance gate.

Collects the per-criterion outcomes from test_acceptance.py and prints
one pass/fail line per criterion after the run, so the acceptance status
is readable straight off the pytest output.
"""

import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")
_outcomes: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    status = "PASS" if report.passed else "FAIL"
    label = m.group(2).replace("_", " ")
    _outcomes[int(m.group(1))] = (status, label)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for num in sorted(_outcomes):
        status, label = _outcomes[num]
        terminalreporter.write_line(f"[{status}] criterion {num:2d}: {label}")
