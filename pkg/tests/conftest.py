import numpy as np
import pytest

from loglap.mesh import DomainSpec, WeightSpec
from loglap.problem import setup_problem

REF_DOMAIN = DomainSpec(-0.5, 0.5)


@pytest.fixture(scope="session")
def ref_problem():
    return setup_problem(REF_DOMAIN, 128, WeightSpec.constant(1.0))


@pytest.fixture(scope="session")
def small_problem():
    return setup_problem(REF_DOMAIN, 32, WeightSpec.constant(1.0))


@pytest.fixture(scope="session")
def sign_weight_problem():
    w = WeightSpec.piecewise([0.0], [0.5, 1.5], w2_lambda0=-20.0)
    return setup_problem(REF_DOMAIN, 128, w)


@pytest.fixture
def rng():
    return np.random.default_rng(0x5EED)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
