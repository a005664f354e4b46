"""Shared pytest plumbing.

The acceptance suite records one line per criterion; the summary hook
prints the block after the run so the verdicts stay visible regardless of
output capture.
"""

ACCEPTANCE_LINES = []


def record_criterion(number, name, ok, detail):
    status = "PASS" if ok else "FAIL"
    ACCEPTANCE_LINES.append(f"criterion {number:02d} {status}  {name}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
