"""Shared test hooks.

The acceptance module records one line per criterion; the hook below echoes
them into the terminal summary so the pass/fail ledger survives capture.
"""

ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
