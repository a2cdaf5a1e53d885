import numpy as np
import pytest

from antizeno import ExactParams, ExactSolution, SystemParams

# reference parameters: omega0 = 1, zeta = 0.1, g = 0.1
BASE = dict(omega0=1.0, zeta=0.1, g=0.1)
EDGE_OMEGAS = (1.198, 1.2, 1.203)

_acceptance_lines = []


@pytest.fixture
def above_band():
    return SystemParams.from_values(Omega=2.0, **BASE)


@pytest.fixture(scope="session")
def edge_solutions():
    return {Om: ExactSolution(ExactParams(Omega_eff=Om, **BASE)) for Om in EDGE_OMEGAS}


@pytest.fixture(scope="session")
def edge_grid():
    return np.linspace(0.0, 200.0, 2001)


@pytest.fixture(scope="session")
def acceptance_log():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
