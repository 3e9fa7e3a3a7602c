"""Shared test plumbing.

The acceptance tests record one verdict line per criterion here; the
terminal-summary hook prints them after the run so the per-criterion
pass/fail report is visible under any capture mode.
"""

acceptance_verdicts: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_verdicts:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_verdicts:
            terminalreporter.write_line(line)
