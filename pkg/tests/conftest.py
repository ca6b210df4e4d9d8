import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[str, tuple[int, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by this test")


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    number, title = marker
    failed = report.failed
    previous = _criteria.get(report.nodeid)
    if report.when == "call" or failed or previous is None:
        verdict = "FAIL" if failed else ("PASS" if report.when == "call" else "SKIP")
        if previous is None or previous[2] != "FAIL":
            _criteria[report.nodeid] = (number, title, verdict)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = tuple(marker.args)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, verdict in sorted(_criteria.values()):
        terminalreporter.write_line(f"criterion {number:2d}: {verdict}  {title}")
