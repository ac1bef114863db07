import itertools

import numpy as np
import pytest

from multient.states import SubsystemShape, flat_index

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_unitary(d, rng):
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_hermitian(d, rng):
    a = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return (a + a.conj().T) / 2


def relabel_by_enumeration(dims, order):
    """sigma(old flat) -> new flat, by walking every local-index tuple."""
    old = SubsystemShape(tuple(dims))
    new = SubsystemShape(tuple(dims[p] for p in order))
    sigma = {}
    for locs in itertools.product(*(range(d) for d in dims)):
        sigma[flat_index(old, locs)] = flat_index(new, tuple(locs[p] for p in order))
    return sigma


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
