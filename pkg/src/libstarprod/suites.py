"""Named property suites run by ``starprod check``."""

import logging

from sympy.polys.domains import QQ

from libstarprod.data.settings import Settings
from libstarprod.expr import parse_polynomial
from libstarprod.fuzzy import (
    NotScalar,
    build_irrep,
    casimir_eigenvalue,
    check_brackets,
    check_homomorphism,
    image_dimension,
)
from libstarprod.glue.gluing import (
    BUILTIN_INSTANCES,
    GluedStar,
    GluingInstance,
    check_chart_agreement,
    check_cocycle,
    check_compatibility,
    check_glued_associativity,
    check_intertwiner,
    check_partition_equivalence,
    check_restriction,
)
from libstarprod.liealg import LieAlgebra, builtin, poisson_properties, validate
from libstarprod.orbit.su2 import (
    RADIUS,
    HarmonicStar,
    Level,
    OrbitData,
    b1_rank,
    check_ideal_correspondence,
    check_quotient_associativity,
)
from libstarprod.poly import format_scalar
from libstarprod.report import CheckReport
from libstarprod.star import (
    MoyalHeisenberg,
    WeylStar,
    check_agreement,
    check_associativity,
    check_plane_restriction,
    check_semiclassical,
    check_tangential,
)
from libstarprod.uea import central_witness
from libstarprod.weyl import (
    WeylContext,
    check_intertwining,
    check_inverse,
    check_oracle,
    inner_derivation,
    weyl_sym,
)

parent_logger = logging.getLogger(__name__)

SPINS = (QQ(1, 2), QQ(1), QQ(3, 2))
FUZZY_H = (QQ(1), QQ(1, 2))
RANK_VALUES = {"h": QQ(1, 3), RADIUS: QQ(2)}


def _validate(algebra, settings, params):
    return [validate(algebra)]


def _poisson(algebra, settings, params):
    ctx = WeylContext(algebra, params)
    return [poisson_properties(algebra, settings.degree, ctx.context, settings.workers)]


def _semiclassical(algebra, settings, params):
    ctx = WeylContext(algebra, params)
    product = WeylStar(ctx)
    return [check_semiclassical(product, algebra, settings.degree, settings.workers)]


def _associativity(algebra, settings, params):
    ctx = WeylContext(algebra, params)
    product = WeylStar(ctx)
    return [check_associativity(product, settings.degree, workers=settings.workers)]


def _casimir(algebra, settings, params):
    report = CheckReport(f"casimir {algebra.name}", checked=1)
    if algebra.invariant is None:
        report.details["invariant"] = "none declared"
        return [report]
    ctx = WeylContext(algebra, params)
    casimir = weyl_sym(parse_polynomial(algebra.invariant, ctx.context), ctx)
    report.details["casimir"] = str(casimir)
    witness = central_witness(casimir)
    if witness is not None:
        name, value = witness
        report.fail(generator=name, commutator=value)
    return [report]


def _moyal_equivalence(algebra, settings, params):
    ctx = WeylContext(builtin("heisenberg"), params)
    moyal = MoyalHeisenberg(ctx.context)
    return [check_agreement(moyal, WeylStar(ctx), settings.degree, settings.workers)]


def _restriction(algebra, settings, params):
    ctx = WeylContext(builtin("heisenberg"), params)
    return [check_plane_restriction(ctx.context, settings.degree, settings.workers)]


def _weyl_oracle(algebra, settings, params):
    ctx = WeylContext(algebra, params)
    return [
        check_oracle(ctx, settings.degree, settings.workers),
        check_inverse(ctx, settings.degree, settings.workers),
    ]


def _intertwining(algebra, settings, params):
    ctx = WeylContext(algebra, params)
    derivations = [inner_derivation(algebra, i) for i in range(algebra.dimension)]
    return [
        check_intertwining(derivation, settings.degree, ctx, settings.workers)
        for derivation in derivations
    ]


def su2_orbit(settings: Settings, radius=None) -> OrbitData:
    """Orbit data on su(2) with the symbolic radius declared."""
    weyl = WeylContext(builtin("su2"), (RADIUS,))
    return OrbitData.su2(weyl, radius, Level(settings.level))


def tangential_dichotomy(orbit: OrbitData, settings: Settings) -> CheckReport:
    """The Weyl product leaves the orbit ideal while the harmonic product keeps it."""
    generator = orbit.invariant - orbit.level_constant
    bounds = (settings.degree, settings.h_order, settings.workers)
    weyl = check_tangential(WeylStar(orbit.weyl), [generator], *bounds)
    harmonic = check_tangential(HarmonicStar(orbit), [generator], *bounds)
    checked = weyl.checked + harmonic.checked
    report = CheckReport("tangential dichotomy", checked=checked)
    report.details.update(weyl_S=weyl.status, psi_P=harmonic.status)
    if weyl.witnesses:
        witness = weyl.witnesses[0]
        text = ", ".join(f"{k}={v}" for k, v in witness.items())
        report.details["weyl_S witness"] = text
    if weyl.passed:
        report.fail(product=WeylStar.name, expected="fail")
    if not harmonic.passed:
        report.fail(product=HarmonicStar.name, expected="pass", **harmonic.witnesses[0])
    return report


def _tangential(algebra, settings, params):
    return [tangential_dichotomy(su2_orbit(settings), settings)]


def _quotient(algebra, settings, params):
    orbit = su2_orbit(settings)
    degree = settings.degree
    return [
        check_ideal_correspondence(orbit, degree + 2, settings.workers),
        check_quotient_associativity(orbit, degree, settings.workers),
        b1_rank(orbit, degree + 3, RANK_VALUES, "psi"),
        b1_rank(orbit, degree + 3, RANK_VALUES, "weyl"),
    ]


def fuzzy_reports(j, h, settings: Settings, weyl=None) -> list:
    """Brackets, Schur, descent, homomorphism and image dimension for one irrep."""
    algebra = builtin("su2")
    weyl = weyl or WeylContext(algebra)
    rep = build_irrep(j, h)
    reports = [check_brackets(algebra, rep)]
    label = f"spin {format_scalar(rep.j)} h={format_scalar(rep.h)}"
    schur = CheckReport(f"casimir scalar {label}", checked=1)
    try:
        eigenvalue = casimir_eigenvalue(rep)
    except NotScalar as e:
        schur.fail(matrix=e.matrix)
        return reports + [schur]
    schur.details["eigenvalue"] = format_scalar(eigenvalue)
    reports.append(schur)
    orbit = OrbitData.with_level(weyl, eigenvalue)
    reports.append(check_homomorphism(orbit, rep, 2, workers=settings.workers))
    dimension = image_dimension(rep, settings.degree_cap)
    image = CheckReport(f"image dimension {label}", checked=1)
    image.details.update(dimension=dimension, expected=rep.dimension**2)
    if dimension != rep.dimension**2:
        image.fail(dimension=dimension, expected=rep.dimension**2)
    reports.append(image)
    return reports


def _fuzzy(algebra, settings, params):
    weyl = WeylContext(builtin("su2"))
    reports = []
    for j in SPINS:
        for h in FUZZY_H:
            reports.extend(fuzzy_reports(j, h, settings, weyl))
    return reports


def glue_reports(instance: GluingInstance, settings: Settings) -> list:
    """Every gluing identity on one instance."""
    degree, workers = settings.degree, settings.workers
    reports = [
        check_cocycle(instance, degree, workers),
        check_intertwiner(instance, degree, workers),
        check_compatibility(instance, degree, workers),
        check_chart_agreement(instance, degree, workers),
        check_glued_associativity(instance, degree, workers),
        check_restriction(instance, degree, workers),
    ]
    if len(instance.charts) == 2:
        first, second = instance.charts
        last = instance.context.var(instance.context.coordinates[-1])
        other = instance.with_weights({first: last * last, second: 1 - last * last})
        reports.append(check_partition_equivalence(instance, other, degree, workers))
    return reports


def _glue(algebra, settings, params):
    instance = BUILTIN_INSTANCES["two-chart"](settings.jet_order)
    identity = BUILTIN_INSTANCES["identity"](settings.jet_order)
    reports = glue_reports(instance, settings)
    chart = identity.charts[0]
    reports.append(
        check_agreement(
            GluedStar(identity, chart),
            identity.products[chart],
            settings.degree,
            settings.workers,
        )
    )
    return reports


SUITES = {
    "validate": _validate,
    "poisson": _poisson,
    "semiclassical": _semiclassical,
    "associativity": _associativity,
    "casimir": _casimir,
    "moyal-equivalence": _moyal_equivalence,
    "restriction": _restriction,
    "weyl-oracle": _weyl_oracle,
    "intertwining": _intertwining,
    "tangential": _tangential,
    "quotient": _quotient,
    "fuzzy": _fuzzy,
    "glue": _glue,
}


def run_suite(name: str, algebra: LieAlgebra, settings: Settings, params=()) -> list:
    """Run one named suite and return its reports in a fixed order."""
    parent_logger.info("running suite %s on %s", name, algebra.name)
    return SUITES[name](algebra, settings, tuple(params))
