from fractions import Fraction

import pytest

PI_GRID = (Fraction(1, 10), Fraction(1, 3), Fraction(1, 2), Fraction(9, 10))

_criteria: dict[int, tuple[str, bool]] = {}


@pytest.fixture(params=PI_GRID, ids=lambda p: f"pi={p}")
def grid_pi(request):
    return request.param


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or not (report.when == "call" or report.failed):
        return
    number, title = marker.args
    _, ok_so_far = _criteria.get(number, (title, True))
    _criteria[number] = (title, ok_so_far and report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"AC{number:>2} {'PASS' if ok else 'FAIL'}  {title}")
