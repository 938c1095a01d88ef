import pytest

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, text = marker.args
    prev = _criteria.get(number, (text, "PASS"))[1]
    if report.failed:
        status = "FAIL"
    elif report.skipped:
        status = "SKIP" if prev == "PASS" and report.when == "setup" else prev
    else:
        status = prev
    _criteria[number] = (text, status)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        text, status = _criteria[number]
        terminalreporter.write_line(f"[{status}] criterion {number:>2}: {text}")
