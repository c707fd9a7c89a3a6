"""Shared fixtures and the acceptance report hook."""

import numpy as np
import pytest

from areaflow import analytic, make_grid, sample

# acceptance tests append one line per criterion; printed after the run so
# the pass/fail ledger is visible without -s
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def grid20():
    return make_grid(20)


@pytest.fixture(scope="session")
def bump():
    return analytic.GaussianBump()


@pytest.fixture(scope="session")
def stream():
    return analytic.SineStream()


@pytest.fixture(scope="session")
def w0_20(grid20, bump):
    return sample(grid20, bump, apply_boundary=True)


def interior_random(rng, grid, band=2, scale=1.0):
    """Random field zeroed on a ring of width `band`; the discrete sum
    identities hold exactly only for fields supported away from the wall."""
    vals = np.zeros(grid.shape)
    vals[band:-band, band:-band] = scale * rng.standard_normal(
        (grid.nx - 2 * band, grid.ny - 2 * band))
    return vals
