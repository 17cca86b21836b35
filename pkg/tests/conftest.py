import pytest

from subdirac.connection import christoffel
from subdirac.group_model import fivedim, heisenberg, threestep
from subdirac.spin import SpinStructure


@pytest.fixture(scope="session")
def heis():
    return heisenberg(1, 1, 1)


@pytest.fixture(scope="session")
def heis_sub():
    return heisenberg(1, 1, 1, subriemannian=True)


@pytest.fixture(scope="session")
def five():
    return fivedim(2, 2)


@pytest.fixture(scope="session")
def three():
    return threestep(2, 2)


def zero_spin(model, dot=0):
    return SpinStructure((0,) * model.n, dot)


def table_of(model):
    return christoffel(model)


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = {}


@pytest.fixture
def acceptance():
    def record(n, ok, detail):
        line = f"acceptance {n}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES[n] = line
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
