import pytest

from acceptance_log import RESULTS


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        ok, note = RESULTS[k]
        line = "criterion %d: %s" % (k, note if ok is None else ("PASS" if ok else "FAIL"))
        if ok is not None and note:
            line += " (%s)" % note
        terminalreporter.write_line(line)
