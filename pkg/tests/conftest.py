import pytest

_outcomes: dict[int, list] = {}
_labels: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion covered by a test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            number, label = mark.args
            _labels[number] = label
            _outcomes.setdefault(number, [])
            item.user_properties.append(("criterion", number))


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _outcomes[crit].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _labels:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_labels):
        results = _outcomes.get(number, [])
        ok = bool(results) and all(r == "passed" for r in results)
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {_labels[number]}")
