import pytest

from fusionkit.corpus import shipped_corpus

_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_acceptance.items()):
        flag = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{flag}  {name}")


@pytest.fixture(params=["oracle", "chain"])
def backend(request):
    return request.param


@pytest.fixture(scope="session")
def corpus():
    return shipped_corpus()
