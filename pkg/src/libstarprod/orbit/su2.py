"""Quantization of su(2) coadjoint orbits.

An orbit is the level set ``p = c0`` of the invariant ``p = x^2 + y^2 + z^2``.
Its quantum counterpart is the quotient of the enveloping algebra by the
ideal generated by ``P - c(h)`` where ``P`` is the Casimir ``X^2 + Y^2 + Z^2``
and ``c(0) = c0``. Two maps relate polynomials to the enveloping algebra:

* ``psi_su2`` sends ``Q*(p - c0) + R`` (R of z-degree at most one) to
  ``Q(X,Y,Z)*(P - c(h)) + R(X,Y,Z)`` in standard order; it carries the
  classical ideal onto the quantum one.
* ``psi_harmonic`` sends ``p^k f_k`` (``f_k`` harmonic) to
  ``(P - c(h) + c0)^k W(f_k)``; the product it induces is algebraic and acts
  by plain multiplication with ``p``.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
import logging

from sympy.polys.matrices import DomainMatrix

from libstarprod.liealg import kirillov_bracket
from libstarprod.orbit.harmonic import harmonic_decompose, invariant
from libstarprod.poly import (
    PolyContext,
    divide_monic,
    evaluate,
    format_polynomial,
    ground_value,
    monomial_tuples,
    monomials,
)
from libstarprod.report import CheckReport, collect
from libstarprod.star import StarProduct
from libstarprod.uea import EnvelopingElement, ideal_reduce, ue_mul
from libstarprod.weyl import WeylContext, invert_triangular, weyl_sym

parent_logger = logging.getLogger(__name__)

RADIUS = "r"


class Level(Enum):
    """Choice of deformed level c(h)."""

    PLAIN = "plain"
    SHIFTED = "shifted"


def deformed_level(kind: Level, radius, context: PolyContext):
    """c(h) = r^2 (plain) or r(r + h) (shifted).

    ``radius`` is a polynomial or a number.
    """
    if not context.owns(radius):
        radius = context.constant(radius)
    if Level(kind) is Level.SHIFTED:
        return radius * (radius + context.h)
    return radius * radius


@dataclass(frozen=True, eq=False)
class OrbitData:
    """Invariant, classical level c0 and deformed level c(h) of one orbit."""

    weyl: WeylContext
    invariant: object
    level_constant: object
    level: object

    def __post_init__(self):
        context = self.weyl.context
        if evaluate(self.level, {"h": 0}) != self.level_constant:
            raise InvalidOrbit(
                f"c(0) = {format_polynomial(evaluate(self.level, {'h': 0}))} "
                f"differs from c0 = {format_polynomial(self.level_constant)}"
            )
        for name in self.weyl.algebra.coordinates:
            if kirillov_bracket(self.weyl.algebra, self.invariant, context.var(name)):
                text = format_polynomial(self.invariant)
                raise InvalidOrbit(f"{text} is not invariant")

    @classmethod
    def su2(cls, weyl: WeylContext, radius=None, kind=Level.PLAIN) -> "OrbitData":
        """Orbit of radius ``radius``; a symbolic ``r`` parameter when ``None``."""
        context = weyl.context
        r = context.var(RADIUS) if radius is None else context.constant(radius)
        return cls(weyl, invariant(context), r * r, deformed_level(kind, r, context))

    @classmethod
    def with_level(cls, weyl: WeylContext, level) -> "OrbitData":
        """Orbit whose deformed level is the given polynomial in h."""
        context = weyl.context
        if not context.owns(level):
            level = context.constant(level)
        return cls(weyl, invariant(context), evaluate(level, {"h": 0}), level)

    @property
    def context(self) -> PolyContext:
        return self.weyl.context

    @property
    def enveloping(self):
        return self.weyl.enveloping

    @property
    def division_variable(self) -> str:
        return self.context.coordinates[-1]

    @cached_property
    def casimir(self) -> EnvelopingElement:
        """W(p), central in the enveloping algebra."""
        return weyl_sym(self.invariant, self.weyl)

    @cached_property
    def ideal_generator(self) -> EnvelopingElement:
        """P - c(h)."""
        return self.casimir - self.enveloping.scalar(self.level)


@dataclass(frozen=True, eq=False)
class QuotientElement:
    """Class modulo P - c(h), stored as its reduced form (z-degree at most one)."""

    orbit: OrbitData
    element: EnvelopingElement

    def __eq__(self, other):
        return isinstance(other, QuotientElement) and self.element == other.element

    __hash__ = None

    def __mul__(self, other: "QuotientElement") -> "QuotientElement":
        return star_PTheta(self, other)

    def __add__(self, other: "QuotientElement") -> "QuotientElement":
        return QuotientElement(self.orbit, self.element + other.element)

    def __sub__(self, other: "QuotientElement") -> "QuotientElement":
        return QuotientElement(self.orbit, self.element - other.element)

    def to_polynomial(self):
        """The B1 polynomial whose standard-order image is this class."""
        return self.orbit.enveloping.to_ordered(self.element)

    def __str__(self):
        return str(self.element)


def quotient_class(a: EnvelopingElement, orbit: OrbitData) -> QuotientElement:
    """Reduce ``a`` modulo P - c(h)."""
    return QuotientElement(orbit, ideal_reduce(a, orbit.casimir, orbit.level))


def psi_su2(f, orbit: OrbitData) -> EnvelopingElement:
    """Standard-order map carrying (p - c0) onto (P - c(h))."""
    enveloping = orbit.enveloping
    quotient, remainder = divide_monic(
        f, orbit.invariant - orbit.level_constant, orbit.division_variable
    )
    image = enveloping.from_ordered(remainder)
    if quotient:
        image = image + ue_mul(enveloping.from_ordered(quotient), orbit.ideal_generator)
    return image


def star_PTheta(a: QuotientElement, b: QuotientElement) -> QuotientElement:
    """Product of two classes of the quotient algebra."""
    return quotient_class(ue_mul(a.element, b.element), a.orbit)


def psi_harmonic(f, orbit: OrbitData) -> EnvelopingElement:
    """p^k f_k -> (P - c(h) + c0)^k W(f_k) with f_k harmonic."""
    if orbit.invariant != invariant(orbit.context):
        raise InvalidOrbit("harmonic decomposition needs the sum-of-squares invariant")
    enveloping = orbit.enveloping
    shifted = orbit.ideal_generator + enveloping.scalar(orbit.level_constant)
    result = enveloping.zero()
    for power, part in harmonic_decompose(f, orbit.context):
        image = weyl_sym(part, orbit.weyl)
        if power:
            image = ue_mul(shifted**power, image)
        result = result + image
    return result


def psi_harmonic_inverse(a: EnvelopingElement, orbit: OrbitData):
    return invert_triangular(a, lambda f: psi_harmonic(f, orbit))


def star_P(f, g, orbit: OrbitData):
    """Transport of the enveloping product through :func:`psi_harmonic`."""
    return psi_harmonic_inverse(
        ue_mul(psi_harmonic(f, orbit), psi_harmonic(g, orbit)), orbit
    )


class HarmonicStar(StarProduct):
    """Algebraic product tangent to every orbit p = const."""

    name = "psi_P"

    def __init__(self, orbit: OrbitData):
        super().__init__(orbit.context)
        self.orbit = orbit

    def multiply(self, f, g):
        return star_P(f, g, self.orbit)


class QuotientStar(StarProduct):
    """Product of the quotient algebra read on B1 polynomials."""

    name = "quotient"

    def __init__(self, orbit: OrbitData):
        super().__init__(orbit.context)
        self.orbit = orbit

    def multiply(self, f, g):
        a = quotient_class(psi_su2(f, self.orbit), self.orbit)
        b = quotient_class(psi_su2(g, self.orbit), self.orbit)
        return star_PTheta(a, b).to_polynomial()


def b1_monomials(context: PolyContext, degree: int) -> list:
    """Coordinate monomials of degree at most ``degree`` with z-exponent at most one."""
    last = len(context.coordinates) - 1
    return [
        m
        for m in monomials(context, degree)
        if next(iter(m.keys()))[last] <= 1
    ]


def check_ideal_correspondence(orbit: OrbitData, degree: int, workers=1) -> CheckReport:
    """psi of every m*(p - c0) reduces to zero and B1 monomials are already reduced."""
    context = orbit.context
    generator = orbit.invariant - orbit.level_constant
    cases = [("ideal", m * generator) for m in monomials(context, max(degree - 2, 0))]
    cases.extend(("basis", b) for b in b1_monomials(context, degree))

    def corresponds(case):
        kind, f = case
        image = psi_su2(f, orbit)
        reduced = quotient_class(image, orbit).element
        expected = orbit.enveloping.zero() if kind == "ideal" else image
        if reduced != expected:
            return {
                "kind": kind,
                "polynomial": format_polynomial(f),
                "reduced": str(reduced),
            }
        return None

    name = f"ideal correspondence c={format_polynomial(orbit.level)}"
    return collect(name, corresponds, cases, workers)


def check_quotient_associativity(
    orbit: OrbitData, degree: int, workers=1
) -> CheckReport:
    """Associativity and the unit law on B1 triples.

    Triples have combined degree at most ``degree``.
    """
    context = orbit.context
    allowed = {tuple(m.keys()) for m in b1_monomials(context, degree)}
    triples = [
        t
        for t in monomial_tuples(context, 3, degree)
        if all(tuple(m.keys()) in allowed for m in t)
    ]
    one = quotient_class(orbit.enveloping.one(), orbit)

    def associative(triple):
        a, b, c = (quotient_class(psi_su2(m, orbit), orbit) for m in triple)
        if one * a != a or a * one != a:
            return {"property": "unit", "a": format_polynomial(triple[0])}
        if (a * b) * c != a * (b * c):
            return {
                "property": "associativity",
                "a": format_polynomial(triple[0]),
                "b": format_polynomial(triple[1]),
                "c": format_polynomial(triple[2]),
            }
        return None

    return collect("quotient associativity", associative, triples, workers)


def b1_rank(orbit: OrbitData, degree: int, values: dict, through="psi") -> CheckReport:
    """Exact rank of the reduced images of B1 monomials after specializing ``values``.

    ``through`` selects the standard-order map ``psi`` or the Weyl map ``weyl``.
    The check passes when the images are linearly independent.
    """
    basis = b1_monomials(orbit.context, degree)
    rows = []
    words = {}
    for b in basis:
        image = psi_su2(b, orbit) if through == "psi" else weyl_sym(b, orbit.weyl)
        reduced = quotient_class(image, orbit).element
        row = {}
        for word, coeff in reduced.terms.items():
            value = ground_value(evaluate(coeff, values))
            if value:
                row[words.setdefault(word, len(words))] = value
        rows.append(row)
    domain = orbit.context.domain
    matrix = DomainMatrix(
        [[row.get(k, domain.zero) for k in range(len(words))] for row in rows],
        (len(rows), len(words)),
        domain,
    )
    rank = matrix.rank() if words else 0
    report = CheckReport(f"B1 rank through {through}", checked=len(basis))
    report.details.update(rank=rank, expected=len(basis), degree=degree)
    if rank != len(basis):
        report.fail(rank=rank, expected=len(basis))
    parent_logger.info("%s: rank %s of %s", report.name, rank, len(basis))
    return report


class InvalidOrbit(Exception):
    """Raise when orbit data break the level or invariance conditions."""

    def __init__(self, reason: str = ""):
        self.reason = reason
        self.message = f"Invalid orbit data: {reason}"
        super().__init__(self.message)
