import numpy as np
import pytest

from xbarc import (
    decompose,
    grid_for,
    initial_placement,
    load_config,
    schedule_integrated,
)
from xbarc.crossbar import Grid


@pytest.fixture(scope="session")
def default_config():
    return load_config("{}")


def sparse_grid(n, sites):
    """Grid with qubits 0..k-1 on the given checkerboard sites."""
    return Grid(n, tuple(tuple(s) for s in sites))


def compile_native(circuit, config=None):
    config = config or load_config("{}")
    dec = decompose(circuit, config)
    grid = initial_placement(dec, grid_for(dec.n_qubits))
    return dec, schedule_integrated(dec, grid)


def rng_for(*entropy):
    return np.random.default_rng(list(entropy))
