import pytest

from statekit import load_seed, load_seeds

_CRITERIA = []


@pytest.fixture(scope="session")
def seeds():
    return load_seeds()


@pytest.fixture(scope="session")
def rif():
    return load_seed("rif")


@pytest.fixture(scope="session")
def fr():
    return load_seed("fr")


@pytest.fixture(scope="session")
def en():
    return load_seed("en")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for key, value in report.user_properties:
        if key == "criterion":
            _CRITERIA.append((value, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, ok in sorted(_CRITERIA):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}")
