"""Acceptance bookkeeping: tests tagged ``@pytest.mark.criterion(n, title)`` are
grouped, and the terminal summary prints one PASS/FAIL line per criterion."""

import pytest

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion the test checks")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    entry = _criteria.setdefault(number, {"title": title, "tests": 0, "failed": [], "skipped": 0})
    if report.when == "call":
        entry["tests"] += 1
    if report.failed:
        entry["failed"].append(item.name)
    elif report.skipped:
        entry["skipped"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        ok = entry["tests"] > 0 and not entry["failed"] and not entry["skipped"]
        status = "PASS" if ok else "FAIL"
        line = f"criterion {number:2d} {status}: {entry['title']}"
        if entry["failed"]:
            line += f" (failed: {', '.join(entry['failed'])})"
        terminalreporter.write_line(line)
