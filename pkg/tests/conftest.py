"""Collects one pass/fail line per acceptance criterion for the terminal summary."""

import pytest

_outcomes = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title, budget): acceptance criterion n")


def _criterion(item):
    m = item.get_closest_marker("criterion")
    return m.args if m else None


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    crit = _criterion(item)
    if crit is None or rep.when != "call" and not (rep.when == "setup" and rep.outcome != "passed"):
        return
    n, title, budget = crit
    if hasattr(rep, "wasxfail"):
        # an expected failure is still a failed criterion
        status = "FAIL" if rep.skipped else "PASS"
        note = rep.wasxfail
    else:
        status = "PASS" if rep.passed else "FAIL"
        note = ""
    _outcomes[n] = (title, status, rep.duration, budget, note)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_outcomes):
        title, status, secs, budget, note = _outcomes[n]
        line = f"criterion {n}: {status}  {title}  ({secs:.2f}s, budget {budget}s)"
        if note:
            line += f"  [{note}]"
        tr.write_line(line)
