from pathlib import Path

import pytest

import helpers

DATA = Path(__file__).parent / "data"

# filled by test_acceptance; printed once at the end of the session
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def fig2ppm():
    return helpers.fig_2ppm()


@pytest.fixture
def gprime():
    return helpers.fig_gprime()


@pytest.fixture
def complete23():
    return helpers.complete(2, 3)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
