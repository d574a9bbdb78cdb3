from hypothesis import given
import pytest
from sympy.polys.domains import QQ

from libstarprod.liealg import (
    BUILTINS,
    HeisenbergElement,
    LieAlgebra,
    UnknownAlgebra,
    builtin,
    coadjoint_action,
    heisenberg_coadjoint,
    heisenberg_orbit,
    kirillov_bracket,
    poisson_properties,
    structure_from_brackets,
    validate,
)
from libstarprod.weyl import WeylContext
from tests.strategies import heisenberg_elements


@pytest.mark.parametrize("name", sorted(BUILTINS))
def test_builtins_are_lie_algebras(name):
    report = validate(builtin(name))
    assert report.passed
    assert report.checked == 3**3 + 3**4


def test_unknown_builtin():
    with pytest.raises(UnknownAlgebra):
        builtin("so5")


def test_missing_mirror_breaks_antisymmetry():
    algebra = LieAlgebra("broken", ("A", "B"), ("a", "b"), {(0, 1): {1: QQ(1)}})
    report = validate(algebra)
    assert not report.passed
    assert report.witnesses[0]["property"] == "antisymmetry"


def test_jacobi_violation_is_reported():
    basis = ("A", "B", "C")
    structure = structure_from_brackets(
        basis, {("A", "B"): {"B": 1}, ("B", "C"): {"A": 1}}
    )
    report = validate(LieAlgebra("skew", basis, ("a", "b", "c"), structure))
    assert not report.passed
    assert report.witnesses[0]["property"] == "jacobi"


def test_kirillov_bracket_on_coordinates(su2, heisenberg):
    space = WeylContext(su2).context
    x, y, z = (space.var(v) for v in "xyz")
    assert kirillov_bracket(su2, x, y) == z
    assert kirillov_bracket(su2, y, x) == -z
    assert kirillov_bracket(su2, x**2 + y**2 + z**2, x) == 0
    plane = WeylContext(heisenberg).context
    q, p, e = (plane.var(v) for v in "qpe")
    assert kirillov_bracket(heisenberg, q, p) == e
    assert kirillov_bracket(heisenberg, q * q, p) == 2 * q * e


@pytest.mark.parametrize("name", ["su2", "heisenberg"])
def test_poisson_properties(name):
    algebra = builtin(name)
    report = poisson_properties(algebra, 2, WeylContext(algebra).context)
    assert report.passed


@given(heisenberg_elements, heisenberg_elements, heisenberg_elements)
def test_heisenberg_group_law(g, h, k):
    assert (g * h) * k == g * (h * k)
    assert g * g.inverse() == HeisenbergElement.identity()
    product = heisenberg_coadjoint(g) * heisenberg_coadjoint(h)
    assert heisenberg_coadjoint(g * h) == product


def test_coadjoint_orbits():
    g = HeisenbergElement.of(1, 2, 3)
    assert coadjoint_action(g, (0, 0, 1)) == (2, -1, 1)
    assert coadjoint_action(g, (5, 7, 0)) == (5, 7, 0)
    assert heisenberg_orbit((0, 0, 3)) == "plane e = 3"
    assert heisenberg_orbit((1, 2, 0)) == "point (1, 2, 0)"
