from pathlib import Path

import numpy as np
import pytest

from app.services.automaton import FuzzyAutomaton
from app.utils.lattice import ResiduatedLattice

DATA_DIR = Path(__file__).parent / 'data'

LATTICES = [
    ResiduatedLattice.boolean(),
    ResiduatedLattice.godel(),
    ResiduatedLattice.lukasiewicz(),
    ResiduatedLattice.product(),
    ResiduatedLattice.chain(5),
]

EXAMPLE1_DELTA_A = {
    'x': [[1, 0.3, 0.4], [0.5, 1, 0.3], [0.4, 0.6, 0.7]],
    'y': [[0.5, 0.6, 0.2], [0.3, 0.3, 0.4], [0.7, 0.7, 1]],
}
EXAMPLE1_DELTA_B = {
    'x': [[1, 0.6], [0.6, 0.7]],
    'y': [[0.6, 0.6], [0.7, 1]],
}


def random_values(lattice, rng, shape):
    """Random members of `lattice`: grid points k/10 mixed with uniform reals."""
    if lattice.kind.value == 'chain':
        return rng.integers(0, lattice.n + 1, size=shape)
    if lattice.kind.value == 'boolean':
        return rng.integers(0, 2, size=shape).astype(float)
    grid = rng.integers(0, 11, size=shape) / 10
    uniform = rng.random(size=shape)
    return np.where(rng.random(size=shape) < 0.5, grid, uniform)


def random_automaton(lattice, rng, size, letters=('x', 'y'), grid=True):
    """A random automaton; with `grid` real entries are multiples of 0.1."""
    def values(shape):
        if grid and lattice.kind.value in ('godel', 'lukasiewicz', 'product'):
            return rng.integers(0, 11, size=shape) / 10
        return random_values(lattice, rng, shape)

    return FuzzyAutomaton.from_lists(
        lattice,
        [f"s{i}" for i in range(size)],
        {letter: values((size, size)).tolist() for letter in letters},
        values(size).tolist(),
        values(size).tolist(),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def godel():
    return ResiduatedLattice.godel()


@pytest.fixture
def example_pair(godel):
    """Build the Gödel automata of the worked examples with the given initial vectors."""
    def build(sigma_a=(1, 1, 1), sigma_b=(1, 1)):
        a = FuzzyAutomaton.from_lists(godel, ['a1', 'a2', 'a3'], EXAMPLE1_DELTA_A, list(sigma_a), [1, 1, 1])
        b = FuzzyAutomaton.from_lists(godel, ['b1', 'b2'], EXAMPLE1_DELTA_B, list(sigma_b), [1, 1])
        return a, b

    return build


@pytest.fixture
def example1(example_pair):
    return example_pair()


@pytest.fixture
def product_example():
    """Product-structure automata with an infinite forward bisimulation sequence."""
    def build(sigma_a=(1, 1, 1), tau_a=(1, 1, 1), sigma_b=(1, 1), tau_b=(1, 1)):
        lattice = ResiduatedLattice.product()
        a = FuzzyAutomaton.from_lists(lattice, ['a1', 'a2', 'a3'], {'x': [[1, 1, 0], [1, 1, 0], [0, 0, 0.5]]},
                                      list(sigma_a), list(tau_a))
        b = FuzzyAutomaton.from_lists(lattice, ['b1', 'b2'], {'x': [[1, 0], [0, 0.5]]}, list(sigma_b), list(tau_b))
        return a, b

    return build


@pytest.fixture
def data_dir():
    return DATA_DIR
