import numpy as np
import pytest

import rodtwin as rt
from rodtwin.cli import DEFAULT_SEED

# one line per acceptance criterion, echoed after the run
CRITERION_LINES = []


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERION_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def burgers_snapshot():
    return rt.generate_snapshots()


@pytest.fixture(scope="session")
def burgers_ip(burgers_snapshot):
    return rt.InnerProduct(burgers_snapshot.dx)


@pytest.fixture(scope="session")
def burgers_model(burgers_snapshot):
    return rt.fit(burgers_snapshot, 10, DEFAULT_SEED)


@pytest.fixture(scope="session")
def burgers_fourier(burgers_snapshot):
    return rt.fourier_decomposition(burgers_snapshot)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)


def make_snapshot(values, dx=0.1, dt=0.05):
    """Wrap a plain matrix in grids starting at zero."""
    values = np.asarray(values, dtype=float)
    nx, nt1 = values.shape
    return rt.SnapshotMatrix(
        values=values, x=np.arange(nx) * dx, t=np.arange(nt1) * dt
    )
