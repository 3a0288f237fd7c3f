"""Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""
import pytest

_CRITERIA: dict[str, str] = {}
_RESULTS: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion checked by the test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _CRITERIA[item.nodeid] = mark.args[0]


def pytest_runtest_logreport(report):
    if report.nodeid not in _CRITERIA:
        return
    if report.failed:
        _RESULTS[report.nodeid] = "FAIL"
    elif report.when == "call" and report.passed:
        _RESULTS.setdefault(report.nodeid, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid, name in _CRITERIA.items():
        terminalreporter.write_line(f"{_RESULTS.get(nodeid, 'NOT RUN'):<8} {name}")
