import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from phaselab import Grid1D, SplitMix64, gaussian_mixture


@pytest.fixture
def desk_grid():
    """The desk-scale grid used by the acceptance suites."""
    return Grid1D(256, 1.0 / 16.0)


@pytest.fixture
def small_grid():
    return Grid1D(64, 0.25)


@pytest.fixture
def gen():
    return SplitMix64(0xC0FFEE)


@pytest.fixture
def fixture_pair(desk_grid, gen):
    return gaussian_mixture(desk_grid, gen), gaussian_mixture(desk_grid, gen)
