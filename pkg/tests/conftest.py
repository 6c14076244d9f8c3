"""Prints a PASS/FAIL line for every acceptance criterion at the end of a run."""

import re

_results: dict = {}
_titles: dict = {}

_NAME = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    m = _NAME.search(report.nodeid)
    if not m:
        return
    k = int(m.group(1))
    _titles.setdefault(k, m.group(2).replace("_", " "))
    if report.when == "call" or report.outcome == "failed":
        prev = _results.get(k, "PASS")
        _results[k] = "FAIL" if report.outcome == "failed" or prev == "FAIL" else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_results):
        terminalreporter.write_line(f"criterion {k}: {_results[k]}  ({_titles[k]})")
