import pytest
from sympy.polys.domains import QQ

from libstarprod.poly import PolyContext, format_polynomial
from libstarprod.star import (
    DimensionMismatch,
    MoyalHeisenberg,
    MoyalR2n,
    NotAntisymmetric,
    NotPrincipal,
    PoissonMatrix,
    WeylStar,
    check_agreement,
    check_associativity,
    check_plane_restriction,
    check_semiclassical,
    check_symplectic_invariance,
    check_tangential,
    contraction,
    division_variable,
    is_symplectic,
)


def test_weyl_product_of_coordinates(su2_weyl):
    star = WeylStar(su2_weyl)
    x, y = su2_weyl.context.var("x"), su2_weyl.context.var("y")
    assert format_polynomial(star(x, y)) == "x*y + (1/2)*h*z"
    assert star.deformed_bracket(x, y) == su2_weyl.context.var("z")


def test_casimir_times_coordinate(su2_weyl):
    context = su2_weyl.context
    x, y, z, h = (context.var(v) for v in "xyzh")
    p = x**2 + y**2 + z**2
    star = WeylStar(su2_weyl)
    assert star(p, x) == p * x - h**2 * x * QQ(1, 3)
    assert star(p, x) == star(x, p)


def test_heisenberg_closed_form(heisenberg_weyl):
    context = heisenberg_weyl.context
    q, p, e, h = (context.var(v) for v in "qpeh")
    moyal = MoyalHeisenberg(context)
    assert moyal(q, p) == q * p + h * e * QQ(1, 2)
    expected = q**2 * p**2 + 2 * h * e * q * p + h**2 * e**2 * QQ(1, 2)
    assert moyal(q**2, p**2) == expected


def test_truncated_heisenberg_product(heisenberg_weyl):
    context = heisenberg_weyl.context
    q, p, e, h = (context.var(v) for v in "qpeh")
    moyal = MoyalHeisenberg(context, order=1)
    assert moyal(q**2, p**2) == q**2 * p**2 + 2 * h * e * q * p


def test_poisson_matrices():
    canonical = PoissonMatrix.canonical(("q1", "q2", "p1", "p2"))
    assert canonical.entries[0][2] == 1
    assert canonical.entries[2][0] == -1
    with pytest.raises(NotAntisymmetric):
        PoissonMatrix.of(("q", "p"), [[0, 1], [1, 0]])
    with pytest.raises(DimensionMismatch):
        PoissonMatrix.canonical(("q", "p", "e"))


def test_contraction_counts_derivative_pairs(plane):
    q, p = plane.var("q"), plane.var("p")
    poisson = PoissonMatrix.canonical(("q", "p"))
    assert contraction(q**2, p**2, poisson, 1) == 4 * q * p
    assert contraction(q**2, p**2, poisson, 2) == 4
    assert contraction(q**2, p**2, poisson, 3) == 0


def test_moyal_on_the_plane(plane):
    q, p, h = plane.var("q"), plane.var("p"), plane.h
    star = MoyalR2n(plane, PoissonMatrix.canonical(("q", "p")))
    assert star(q, p) - star(p, q) == h
    assert check_associativity(star, 4).passed


@pytest.mark.parametrize("algebra", ["su2", "heisenberg"])
def test_weyl_product_is_semiclassical_and_associative(algebra, request):
    weyl = request.getfixturevalue(f"{algebra}_weyl")
    star = WeylStar(weyl)
    assert check_semiclassical(star, weyl.algebra, 3).passed
    assert check_associativity(star, 3).passed


@pytest.mark.slow
def test_weyl_product_associative_in_degree_four(su2_weyl):
    assert check_associativity(WeylStar(su2_weyl), 4, workers=4).passed


def test_heisenberg_weyl_equals_moyal(heisenberg_weyl):
    report = check_agreement(
        MoyalHeisenberg(heisenberg_weyl.context), WeylStar(heisenberg_weyl), 3
    )
    assert report.passed


def test_restriction_to_a_plane(heisenberg_weyl):
    assert check_plane_restriction(heisenberg_weyl.context, 3).passed


def test_symplectic_invariance(plane):
    star = MoyalR2n(plane, PoissonMatrix.canonical(("q", "p")))
    shear = [[1, 1], [0, 1]]
    assert is_symplectic(star.poisson, shear)
    assert check_symplectic_invariance(star, shear, 3).passed
    report = check_symplectic_invariance(star, [[2, 0], [0, 1]], 3)
    assert not report.passed
    assert report.witnesses[0]["property"] == "symplectic"


def test_division_variable(su2_radius):
    context = su2_radius.context
    x, y, z, r = (context.var(v) for v in "xyzr")
    assert division_variable(x**2 + y**2 + z**2 - r**2, context) == "z"
    assert division_variable(x + 2 * y, context) == "x"
    with pytest.raises(NotPrincipal):
        division_variable(2 * x, context)


def test_weyl_product_leaves_the_orbit(su2_radius):
    context = su2_radius.context
    x, y, z, r = (context.var(v) for v in "xyzr")
    generator = x**2 + y**2 + z**2 - r**2
    report = check_tangential(WeylStar(su2_radius), [generator], 2, 2)
    assert not report.passed
    witness = report.witnesses[0]
    assert witness["monomial"] == "x"
    assert witness["side"] == "left"
    assert witness["h_order"] == "2"
    assert witness["remainder"] == "-(1/3)*x"


def test_moyal_leaves_a_linear_ideal(plane):
    star = MoyalR2n(plane, PoissonMatrix.canonical(("q", "p")))
    assert not check_tangential(star, [plane.var("q")], 2, 2).passed
    assert check_tangential(star, [plane.var("q")], 0, 2).passed
