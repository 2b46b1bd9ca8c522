import numpy as np
import pytest

from simcheck import fixtures
from simcheck.pmf import marginal_yx, marginal_yz
from simcheck.simulatability import build_system

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


@pytest.fixture(scope="session")
def example1_system():
    p = fixtures.example1_pmf()
    return build_system(marginal_yz(p), marginal_yx(p))


@pytest.fixture(scope="session")
def example2_system():
    return build_system(*fixtures.example2_matrices())


@pytest.fixture(scope="session")
def example3_system():
    return build_system(*fixtures.example3_matrices())


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
