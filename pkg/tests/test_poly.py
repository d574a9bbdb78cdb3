from hypothesis import given, settings
import pytest
from sympy.polys.domains import QQ, QQ_I

from libstarprod.poly import (
    ContextMismatch,
    DuplicateVariable,
    NotConstant,
    NotDivisible,
    NotMonic,
    PolyContext,
    VariableNotInContext,
    add,
    coefficient_in,
    divide_h,
    divide_monic,
    evaluate,
    format_polynomial,
    format_scalar,
    gaussian,
    ground_value,
    h_coefficient,
    h_degree,
    monomial_tuples,
    monomials,
    partial,
    total_degree,
    truncate_h,
)
from tests.strategies import polynomials

SPACE = PolyContext(("x", "y", "z"), ("r",))


def var(name):
    return SPACE.var(name)


def test_layout_puts_h_after_coordinates():
    assert SPACE.names == ("x", "y", "z", "h", "r")
    assert SPACE.h == var("h")


def test_duplicate_variables_are_rejected():
    with pytest.raises(DuplicateVariable):
        PolyContext(("x", "h"))


def test_unknown_variable():
    with pytest.raises(VariableNotInContext):
        SPACE.var("w")


def test_convert_matches_names():
    plane = PolyContext(("x", "y"))
    f = plane.var("x") * plane.var("y") + plane.h
    assert SPACE.convert(f) == var("x") * var("y") + var("h")
    with pytest.raises(VariableNotInContext):
        plane.convert(var("z"))


def test_mixing_contexts_is_an_error():
    with pytest.raises(ContextMismatch):
        add(var("x"), PolyContext(("x",)).var("x"))


def test_canonical_text():
    f = var("x") * var("y") + var("h") * var("z") * QQ(1, 2)
    assert format_polynomial(f) == "x*y + (1/2)*h*z"
    assert format_polynomial(SPACE.zero) == "0"
    assert format_polynomial(-var("x") ** 2 + 3) == "-x^2 + 3"


def test_deformation_factors_print_first():
    h, r = var("h"), var("r")
    f = h**2 * var("z") ** 2 - h * r * var("x") * QQ(1, 3)
    assert format_polynomial(f) == "h^2*z^2 - (1/3)*h*r*x"
    assert format_polynomial(r**2 * var("y")) == "r^2*y"


def test_gaussian_scalars():
    i = QQ_I.imag_unit
    assert format_scalar(gaussian(QQ(1, 2)) + i) == "1/2 + i"
    assert format_scalar(-i) == "-i"
    assert format_scalar(i * gaussian(QQ(-1, 2))) == "-1/2*i"
    assert format_scalar(QQ(-3, 4)) == "-3/4"


def test_h_bookkeeping():
    x, y, h = var("x"), var("y"), var("h")
    f = x + h * y + h**2 * x * y
    assert h_coefficient(f, 1) == y
    assert h_coefficient(f, 2) == x * y
    assert truncate_h(f, 1) == x + h * y
    assert h_degree(f) == 2
    assert divide_h(h * x + h**2) == x + h
    with pytest.raises(NotDivisible):
        divide_h(f)


def test_evaluate_and_ground_value():
    x, h, r = var("x"), var("h"), var("r")
    assert evaluate(x * r + h, {"h": 0}) == x * r
    assert evaluate(r**2, {"r": QQ(1, 2)}) == SPACE.constant(QQ(1, 4))
    assert ground_value(SPACE.constant(QQ(3, 2))) == QQ(3, 2)
    assert ground_value(SPACE.zero) == 0
    with pytest.raises(NotConstant):
        ground_value(x)


def test_divide_monic_by_the_orbit_generator():
    x, y, z, r = var("x"), var("y"), var("z"), var("r")
    g = x**2 + y**2 + z**2 - r**2
    f = x * z**3 + y * z**2 + z
    quotient, remainder = divide_monic(f, g, "z")
    assert quotient * g + remainder == f
    assert remainder.degree(z) < 2
    assert coefficient_in(remainder, "z", 1) == 1 - x * (x**2 + y**2 - r**2)


def test_divide_monic_needs_a_unit_leading_power():
    with pytest.raises(NotMonic):
        divide_monic(var("z"), 2 * var("z") ** 2, "z")


def test_enumeration_is_deterministic():
    plane = PolyContext(("q", "p"))
    basis = monomials(plane, 2)
    assert len(basis) == 6
    assert basis[0] == plane.one
    assert [total_degree(m) for m in basis] == [0, 1, 1, 2, 2, 2]
    assert len(monomial_tuples(plane, 2, 1)) == 5
    assert basis == monomials(plane, 2)


@settings(max_examples=40, deadline=None)
@given(polynomials(SPACE), polynomials(SPACE))
def test_partial_is_a_derivation(f, g):
    assert partial(f * g, "x") == partial(f, "x") * g + f * partial(g, "x")
