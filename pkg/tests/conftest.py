import numpy as np
import pytest
from hypothesis import settings

from uncommoninfo.optimizer import OptimizerConfig
from uncommoninfo.qlinalg import DensityMatrix, projector

settings.register_profile("default", max_examples=25, deadline=None)
settings.load_profile("default")

BELL = np.array([1, 0, 0, 1]) / np.sqrt(2)
SINGLET = np.array([0, 1, -1, 0]) / np.sqrt(2)
PSI_PLUS = np.array([0, 1, 1, 0]) / np.sqrt(2)


@pytest.fixture
def bell():
    return DensityMatrix(projector(BELL), (2, 2))


@pytest.fixture
def singlet():
    return DensityMatrix(projector(SINGLET), (2, 2))


@pytest.fixture
def mixed4():
    return DensityMatrix(np.eye(4) / 4, (2, 2))


@pytest.fixture
def sym_mix():
    """1/2 |00><00| + 1/2 |psi+><psi+|."""
    return DensityMatrix(0.5 * np.diag([1.0, 0, 0, 0]) + 0.5 * projector(PSI_PLUS), (2, 2))


@pytest.fixture
def quick():
    """Small optimizer budget for tests that only need a feasible point."""
    return OptimizerConfig(starts=4, max_iter=200)


def h2(x):
    return -x * np.log2(x) - (1 - x) * np.log2(1 - x)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import ACCEPTANCE
    except ImportError:
        return
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
