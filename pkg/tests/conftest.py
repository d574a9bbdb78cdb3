import pytest

from libstarprod.liealg import builtin
from libstarprod.orbit.su2 import RADIUS, OrbitData
from libstarprod.poly import PolyContext
from libstarprod.weyl import WeylContext


@pytest.fixture
def su2():
    return builtin("su2")


@pytest.fixture
def heisenberg():
    return builtin("heisenberg")


@pytest.fixture
def su2_weyl(su2):
    return WeylContext(su2)


@pytest.fixture
def su2_radius(su2):
    """su(2) with the orbit radius ``r`` as a commuting parameter."""
    return WeylContext(su2, (RADIUS,))


@pytest.fixture
def heisenberg_weyl(heisenberg):
    return WeylContext(heisenberg)


@pytest.fixture
def orbit(su2_radius):
    return OrbitData.su2(su2_radius)


@pytest.fixture
def plane():
    return PolyContext(("q", "p"))
