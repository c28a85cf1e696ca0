"""Shared pytest hooks.

The numbered tests in test_acceptance.py double as a release checklist.
After the run, print one PASS/FAIL line per criterion so the outcome can
be scanned without digging through the full pytest report.
"""

import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_terminal_summary(terminalreporter):
    verdicts = {}
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, ()):
            match = _CRITERION.search(report.nodeid)
            if match is None:
                continue
            n = int(match.group(1))
            ok = outcome == "passed"
            verdicts[n] = verdicts.get(n, True) and ok
    if not verdicts:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance checklist:")
    for n in sorted(verdicts):
        word = "PASS" if verdicts[n] else "FAIL"
        terminalreporter.write_line(f"  criterion {n}: {word}")
