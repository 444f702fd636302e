"""Shared builders for the test suite."""

import pytest

from pcross.dynamics import PartialSystem
from pcross.fields import PrimeField
from pcross.groups import cyclic_group, product_group
from pcross.twisted import lift_dynamics

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)


def system(group, size, domains=None, maps=None):
    return PartialSystem.build(group, size, domains or {}, maps or {})


@pytest.fixture
def c2():
    return cyclic_group(2)


@pytest.fixture
def c3():
    return cyclic_group(3)


@pytest.fixture
def c6():
    return cyclic_group(6)


@pytest.fixture
def klein():
    return product_group(cyclic_group(2), cyclic_group(2))


@pytest.fixture
def swap_system(c2):
    """Global swap on two points."""
    return system(c2, 2, {1: [0, 1]}, {1: {0: 1, 1: 0}})


@pytest.fixture
def trivial_c2_system(c2):
    """Identity action of the two-element group on two points."""
    return system(c2, 2, {1: [0, 1]}, {1: {0: 0, 1: 1}})


@pytest.fixture
def rotation_fragment(c3):
    """Three-cycle on three points restricted to the first two."""
    return system(c3, 2, {1: [1], 2: [0]}, {1: {0: 1}, 2: {1: 0}})


@pytest.fixture
def guarded_swap(c2):
    """Swap of two points inside a three-point space; the third point is inert."""
    return system(c2, 3, {1: [0, 1]}, {1: {0: 1, 1: 0}})


@pytest.fixture
def swap_action(swap_system):
    return lift_dynamics(swap_system, F3)


@pytest.fixture
def rotation_action(rotation_fragment):
    return lift_dynamics(rotation_fragment, F3)
