"""Shared fixtures"""

import numpy as np
import pytest

from src.fock_dynamics import FockSpace, ModeGrid
from src.source_optics import OpticalContext


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def ctx():
    return OpticalContext(1.0e7)


@pytest.fixture(scope="session")
def small_grid():
    return ModeGrid((-2, -1, 1, 2))


@pytest.fixture(scope="session")
def small_space(small_grid):
    return FockSpace(small_grid, n_max=4)


@pytest.fixture(scope="session")
def default_grid():
    return ModeGrid.symmetric(8)


@pytest.fixture(scope="session")
def default_space(default_grid):
    return FockSpace(default_grid)
