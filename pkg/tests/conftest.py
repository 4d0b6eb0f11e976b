"""Echo one verdict line per acceptance criterion after the run.

The acceptance tests in test_acceptance.py print their own "[criterion NN]"
lines, but pytest captures stdout of passing tests, so this hook repeats the
verdicts in the terminal summary where they are always visible.
"""

import re
import sys

_CRITERION = re.compile(r"test_criterion_(\d+)")
_outcomes = {}


def pytest_runtest_logreport(report):
    match = _CRITERION.search(report.nodeid)
    if not match:
        return
    number = int(match.group(1))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _outcomes[number] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _outcomes:
        return
    module = sys.modules.get("test_acceptance")
    descriptions = getattr(module, "CRITERIA", {}) if module else {}
    verdicts = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        text = descriptions.get(number, "")
        verdict = verdicts.get(_outcomes[number], _outcomes[number].upper())
        terminalreporter.write_line(f"[criterion {number:02d}] {text}: {verdict}")
