import pytest

from chowcalc.chow import curve_model, hyperquadric_model, plane_model, surface_model

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def pf():
    return curve_model()


@pytest.fixture
def qf():
    return hyperquadric_model()


@pytest.fixture
def sup():
    return surface_model()


@pytest.fixture
def plane():
    return plane_model()


@pytest.fixture
def acceptance_log():
    def log(line: str) -> None:
        ACCEPTANCE_LINES.append(line)
        print(line)
    return log


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
