import pytest

from dhilbert.measure import Measure

# (criterion, passed, detail) tuples appended by test_acceptance.py
ACCEPTANCE_LINES = []


@pytest.fixture
def lebesgue():
    return Measure.lebesgue()


@pytest.fixture
def half_atom():
    return Measure.atom(0.5, 1.0)


@pytest.fixture
def jacobi_b1():
    return Measure.jacobi(0.0, 1.0, 1.0)


@pytest.fixture
def empty():
    return Measure.empty()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
