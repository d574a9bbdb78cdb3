from hypothesis import given, settings
from sympy.polys.domains import QQ

from libstarprod.orbit.harmonic import (
    harmonic_compose,
    harmonic_decompose,
    invariant,
    laplacian,
)
from libstarprod.poly import PolyContext
from tests.strategies import polynomials

SPACE = PolyContext(("x", "y", "z"), ("r",))
COORDINATES = SPACE.coordinates


def test_square_of_a_coordinate():
    x = SPACE.var("x")
    p = invariant(SPACE)
    assert harmonic_decompose(x**2, SPACE) == [
        (1, SPACE.constant(QQ(1, 3))),
        (0, x**2 - p * QQ(1, 3)),
    ]


def test_invariant_is_a_pure_power():
    p = invariant(SPACE)
    assert harmonic_decompose(p**2, SPACE) == [(2, SPACE.one)]
    assert harmonic_decompose(SPACE.zero, SPACE) == []


def test_parameters_are_carried_through():
    x, r = SPACE.var("x"), SPACE.var("r")
    p = invariant(SPACE)
    parts = harmonic_decompose(r * x**2 + SPACE.h, SPACE)
    assert parts == [(1, r * QQ(1, 3)), (0, r * (x**2 - p * QQ(1, 3)) + SPACE.h)]


def test_laplacian():
    x, y = SPACE.var("x"), SPACE.var("y")
    assert laplacian(x * y, COORDINATES) == 0
    assert laplacian(invariant(SPACE), COORDINATES) == 6


@settings(max_examples=40, deadline=None)
@given(polynomials(SPACE, degree=4))
def test_decomposition_is_harmonic_and_complete(f):
    parts = harmonic_decompose(f, SPACE)
    assert harmonic_compose(parts, SPACE) == f
    assert all(not laplacian(part, COORDINATES) for _, part in parts)
    powers = [power for power, _ in parts]
    assert powers == sorted(set(powers), reverse=True)
