import numpy as np
import pytest

from ckm.core import MU, PhysicalConstants, StateVector, state_from_scalars


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the reproductions of the limiting thrusts")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running reproduction of a limiting thrust")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow option to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def constants():
    return PhysicalConstants()


@pytest.fixture
def x_i(constants):
    # insertion point below the stable region
    return state_from_scalars(constants.r_e + 110000.0, 7879.5, np.deg2rad(5.0))


@pytest.fixture
def x_circular(constants):
    r = constants.r_e + 400000.0
    return StateVector(r=[r, 0.0, 0.0], v=[0.0, np.sqrt(MU / r), 0.0])


@pytest.fixture
def x_elliptic():
    # inclined, eccentric orbit above the atmosphere
    return StateVector(r=[7.0e6, 1.0e6, 5.0e5], v=[-800.0, 7300.0, 1200.0])
