import pytest

from gesturequad.config import default_config, default_course


@pytest.fixture(scope="session")
def config():
    return default_config()


@pytest.fixture(scope="session")
def course():
    return default_course()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion."""
    reports = [r for outcome in ("passed", "failed")
               for r in terminalreporter.getreports(outcome)
               if r.when == "call" and "test_acceptance.py" in r.nodeid]
    if not reports:
        return
    terminalreporter.section("acceptance criteria")
    for report in sorted(reports, key=lambda r: r.nodeid):
        status = "PASS" if report.passed else "FAIL"
        name = report.nodeid.split("::")[-1].replace("test_", "", 1)
        terminalreporter.write_line(f"{status}  {name}")
