"""Shared test plumbing.

The acceptance tests report one summary line per criterion; results are
collected here and printed after the run, whether or not output capture
is active.
"""

CRITERION_RESULTS: dict[int, str] = {}


def record_criterion(number: int, passed: bool) -> None:
    CRITERION_RESULTS[number] = "PASS" if passed else "FAIL"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not CRITERION_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERION_RESULTS):
        terminalreporter.write_line(f"criterion {number}: {CRITERION_RESULTS[number]}")
