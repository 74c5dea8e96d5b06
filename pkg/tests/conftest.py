"""Collects acceptance outcomes and prints one line per criterion."""

CRITERIA = {}
_OUTCOMES = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, name): acceptance criterion covered by the test")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            number, name = mark.args
            CRITERIA[number] = name
            item.user_properties.append(("criterion", number))


def pytest_runtest_logreport(report):
    number = dict(report.user_properties).get("criterion")
    if number is None:
        return
    if report.when == "call" or report.failed:
        _OUTCOMES[number] = _OUTCOMES.get(number, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        if number not in _OUTCOMES:
            status = "NOT RUN"
        else:
            status = "PASS" if _OUTCOMES[number] else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status} {CRITERIA[number]}")
