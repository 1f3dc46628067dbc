import pytest

from cosilt.algebra import path_basis, quiver_from_triangulation
from cosilt.fixtures import (
    base_triangulation_43,
    t0_triangulation,
)
from cosilt.triangulation import SearchBound


@pytest.fixture(scope="session")
def bound():
    return SearchBound(3, 2)


@pytest.fixture(scope="session")
def t0(bound):
    return t0_triangulation(bound)


@pytest.fixture(scope="session")
def t0_algebra(t0):
    return path_basis(quiver_from_triangulation(t0))


@pytest.fixture(scope="session")
def tri43(bound):
    return base_triangulation_43(bound)


@pytest.fixture(scope="session")
def algebra43(tri43):
    return path_basis(quiver_from_triangulation(tri43))
