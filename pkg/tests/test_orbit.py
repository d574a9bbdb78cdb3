import pytest
from sympy.polys.domains import QQ

from libstarprod.data.settings import Settings
from libstarprod.orbit.harmonic import invariant
from libstarprod.orbit.su2 import (
    HarmonicStar,
    InvalidOrbit,
    Level,
    OrbitData,
    QuotientStar,
    b1_monomials,
    b1_rank,
    check_ideal_correspondence,
    check_quotient_associativity,
    deformed_level,
    psi_harmonic,
    psi_harmonic_inverse,
    psi_su2,
    quotient_class,
)
from libstarprod.suites import RANK_VALUES, tangential_dichotomy
from libstarprod.weyl import weyl_sym


def coordinates(orbit):
    return tuple(orbit.context.var(v) for v in ("x", "y", "z", "r"))


def test_levels(su2_radius):
    context = su2_radius.context
    r, h = context.var("r"), context.h
    assert deformed_level(Level.PLAIN, r, context) == r**2
    assert deformed_level(Level.SHIFTED, r, context) == r * (r + h)
    assert deformed_level("shifted", 2, context) == 4 + 2 * h


def test_orbit_data_validation(su2_radius):
    context = su2_radius.context
    x, r, h = context.var("x"), context.var("r"), context.h
    with pytest.raises(InvalidOrbit):
        OrbitData(su2_radius, x, r**2, r**2)
    with pytest.raises(InvalidOrbit):
        OrbitData(su2_radius, invariant(context), r**2 + 1, r**2 + h)
    orbit = OrbitData.with_level(su2_radius, QQ(-3, 4))
    assert orbit.level_constant == context.constant(QQ(-3, 4))


def test_reduction_of_z_squared(orbit):
    x, y, z, r = coordinates(orbit)
    reduced = quotient_class(orbit.enveloping.parse_word("Z^2"), orbit)
    assert reduced.to_polynomial() == r**2 - x**2 - y**2


def test_psi_maps_the_orbit_ideal_to_zero(orbit):
    x, y, z, r = coordinates(orbit)
    generator = x**2 + y**2 + z**2 - r**2
    assert psi_su2(generator, orbit) == orbit.ideal_generator
    assert not quotient_class(psi_su2(x * generator, orbit), orbit).element


@pytest.mark.parametrize("kind", list(Level))
def test_ideal_correspondence(su2_radius, kind):
    orbit = OrbitData.su2(su2_radius, kind=kind)
    assert check_ideal_correspondence(orbit, 3).passed


def test_quotient_product(orbit):
    x, y, z, r = coordinates(orbit)
    star = QuotientStar(orbit)
    h = orbit.context.h
    assert star(x, y) == x * y
    assert star(y, x) == x * y - h * z
    assert star(z, z) == r**2 - x**2 - y**2


def test_quotient_is_associative(orbit):
    assert check_quotient_associativity(orbit, 3).passed


def test_b1_basis_is_independent(orbit):
    assert len(b1_monomials(orbit.context, 2)) == 9
    for through in ("psi", "weyl"):
        report = b1_rank(orbit, 4, RANK_VALUES, through)
        assert report.passed, report.witnesses
        assert report.details["rank"] == report.details["expected"]


def test_harmonic_map(orbit):
    x, y, z, r = coordinates(orbit)
    p = x**2 + y**2 + z**2
    assert psi_harmonic(p, orbit) == orbit.casimir
    assert psi_harmonic(x * y, orbit) == weyl_sym(x * y, orbit.weyl)
    f = p * x + y * z
    assert psi_harmonic_inverse(psi_harmonic(f, orbit), orbit) == f


def test_harmonic_product_multiplies_by_the_invariant(orbit):
    x, y, z, r = coordinates(orbit)
    p = x**2 + y**2 + z**2
    star = HarmonicStar(orbit)
    assert star(p, x) == p * x
    assert star(x, p) == p * x


def test_tangential_dichotomy(orbit):
    report = tangential_dichotomy(orbit, Settings(degree=2, h_order=2))
    assert report.passed, report.witnesses
    assert report.details["weyl_S"] == "fail"
    assert report.details["psi_P"] == "pass"


@pytest.mark.slow
def test_tangential_dichotomy_at_full_size(orbit):
    report = tangential_dichotomy(orbit, Settings(degree=3, h_order=3))
    assert report.passed, report.witnesses
    witness = report.details["weyl_S witness"]
    assert "monomial=x, side=left, h_order=2, remainder=-(1/3)*x" in witness
