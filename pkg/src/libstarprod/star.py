"""Star products on polynomials and checks of their classical limit."""

from dataclasses import dataclass
from math import factorial
import logging

from sympy.polys.domains import QQ

from libstarprod.liealg import LieAlgebra, kirillov_bracket
from libstarprod.poly import (
    PolyContext,
    coefficient_in,
    derivative,
    divide_h,
    divide_monic,
    evaluate,
    format_polynomial,
    generator,
    h_coefficient,
    h_degree,
    linear_substitution,
    monomial_tuples,
    monomials,
    total_degree,
    truncate_h,
)
from libstarprod.report import CheckReport, collect
from libstarprod.uea import ue_mul
from libstarprod.weyl import WeylContext, weyl_inv, weyl_sym

parent_logger = logging.getLogger(__name__)

HEISENBERG_PAIR = ("q", "p")
HEISENBERG_CENTER = "e"


@dataclass(frozen=True)
class PoissonMatrix:
    """Constant antisymmetric matrix over named variables."""

    variables: tuple
    entries: tuple

    def __post_init__(self):
        n = len(self.variables)
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise DimensionMismatch(n, len(self.entries))
        for i in range(n):
            for j in range(n):
                if self.entries[i][j] != -self.entries[j][i]:
                    raise NotAntisymmetric(self.variables[i], self.variables[j])

    @classmethod
    def of(cls, variables, rows) -> "PoissonMatrix":
        return cls(
            tuple(variables),
            tuple(tuple(QQ.convert(v) for v in row) for row in rows),
        )

    @classmethod
    def canonical(cls, variables) -> "PoissonMatrix":
        """Standard symplectic matrix on (q_1..q_n, p_1..p_n)."""
        size = len(variables)
        if size % 2:
            raise DimensionMismatch(size, size + 1)
        n = size // 2
        rows = [[0] * size for _ in range(size)]
        for i in range(n):
            rows[i][n + i] = 1
            rows[n + i][i] = -1
        return cls.of(variables, rows)

    def nonzero(self):
        return [
            (i, j, entry)
            for i, row in enumerate(self.entries)
            for j, entry in enumerate(row)
            if entry
        ]


def contraction(f, g, poisson: PoissonMatrix, k: int):
    """The k-fold contraction P^k(f, g) of derivatives of f and g."""
    n = len(poisson.variables)
    zero = (0,) * n
    pairs = {(zero, zero): QQ.one}
    for _ in range(k):
        step = {}
        for (alpha, beta), c in pairs.items():
            for i, j, entry in poisson.nonzero():
                key = (
                    alpha[:i] + (alpha[i] + 1,) + alpha[i + 1 :],
                    beta[:j] + (beta[j] + 1,) + beta[j + 1 :],
                )
                step[key] = step.get(key, QQ.zero) + c * entry
        pairs = {key: c for key, c in step.items() if c}
    f_derivatives, g_derivatives = {}, {}
    result = f.ring.zero
    for (alpha, beta), c in pairs.items():
        if alpha not in f_derivatives:
            f_derivatives[alpha] = derivative(f, alpha, poisson.variables)
        if not f_derivatives[alpha]:
            continue
        if beta not in g_derivatives:
            g_derivatives[beta] = derivative(g, beta, poisson.variables)
        result += f_derivatives[alpha] * g_derivatives[beta] * c
    return result


def _exponential_series(f, g, poisson: PoissonMatrix, scale, order=None):
    top = min(total_degree(f, poisson.variables), total_degree(g, poisson.variables))
    if order is not None:
        top = min(top, order)
    result = f.ring.zero
    power = f.ring.one
    for k in range(top + 1):
        term = contraction(f, g, poisson, k)
        if term:
            result += term * power * QQ(1, factorial(k))
        power = power * scale
    return result if order is None else truncate_h(result, order)


def moyal_r2n(f, g, poisson: PoissonMatrix, order=None):
    """Constant-coefficient Moyal product sum_k (h/2)^k/k! P^k(f, g)."""
    scale = generator(f.ring, "h") * QQ(1, 2)
    return _exponential_series(f, g, poisson, scale, order)


def moyal_heisenberg(f, g, order=None):
    """Closed-form product on the Heisenberg dual: sum_k (h e/2)^k/k! P^k(f, g).

    ``P`` is the canonical matrix on (q, p); ``e`` enters only as a coefficient.
    """
    poisson = PoissonMatrix.canonical(HEISENBERG_PAIR)
    scale = generator(f.ring, "h") * generator(f.ring, HEISENBERG_CENTER) * QQ(1, 2)
    return _exponential_series(f, g, poisson, scale, order)


def star_S(f, g, ctx: WeylContext):
    """Transport of the enveloping product through the Weyl map."""
    return weyl_inv(ue_mul(weyl_sym(f, ctx), weyl_sym(g, ctx)), ctx)


def symplectic_substitution(f, poisson: PoissonMatrix, matrix):
    """Apply the linear change of variables ``v -> matrix v`` to ``f``."""
    return linear_substitution(f, poisson.variables, matrix)


def is_symplectic(poisson: PoissonMatrix, matrix) -> bool:
    """True iff S P S^T = P for the given matrix S."""
    n = len(poisson.variables)
    p = poisson.entries
    for i in range(n):
        for j in range(n):
            total = QQ.zero
            for k in range(n):
                for l in range(n):
                    left, right = QQ.convert(matrix[i][k]), QQ.convert(matrix[j][l])
                    total += left * p[k][l] * right
            if total != p[i][j]:
                return False
    return True


class StarProduct:
    """A named bilinear product on the polynomials of one context."""

    name = ""

    def __init__(self, context: PolyContext):
        self.logger = parent_logger.getChild(self.__class__.__name__)
        self.context = context

    def __call__(self, f, g):
        return self.multiply(f, g)

    def multiply(self, f, g):
        """Return ``f * g`` for this product."""
        raise NotImplementedError

    def deformed_bracket(self, f, g):
        """(f*g - g*f)/h; the commutator is always divisible by h."""
        return divide_h(self.multiply(f, g) - self.multiply(g, f))


class WeylStar(StarProduct):
    """Weyl-induced product on the dual of a Lie algebra."""

    name = "weyl_S"

    def __init__(self, weyl: WeylContext):
        super().__init__(weyl.context)
        self.weyl = weyl

    def multiply(self, f, g):
        return star_S(f, g, self.weyl)


class MoyalHeisenberg(StarProduct):
    """Exponential product on the Heisenberg dual, exact or truncated at ``order``."""

    name = "moyal_heis"

    def __init__(self, context: PolyContext, order=None):
        super().__init__(context)
        self.order = order

    def multiply(self, f, g):
        return moyal_heisenberg(f, g, self.order)


class MoyalR2n(StarProduct):
    """Moyal-Weyl product of a constant Poisson matrix."""

    name = "moyal_r2n"

    def __init__(self, context: PolyContext, poisson: PoissonMatrix, order=None):
        super().__init__(context)
        for v in poisson.variables:
            context.index(v)
        self.poisson = poisson
        self.order = order

    def multiply(self, f, g):
        return moyal_r2n(f, g, self.poisson, self.order)


def check_semiclassical(
    product: StarProduct, algebra: LieAlgebra, degree: int, workers=1
):
    """Classical limit and first-order commutator on monomial pairs.

    For every pair of coordinate monomials with combined degree at most
    ``degree``: the h^0 part of f*g is fg, and the h^1 part of f*g - g*f is the
    Kirillov bracket.
    """

    def limits(pair):
        f, g = pair
        forward, backward = product(f, g), product(g, f)
        classical = h_coefficient(forward, 0)
        if classical != f * g:
            return {
                "property": "classical limit",
                "f": format_polynomial(f),
                "g": format_polynomial(g),
                "expected": format_polynomial(f * g),
                "found": format_polynomial(classical),
            }
        commutator = forward - backward
        first = h_coefficient(commutator, 1)
        expected = kirillov_bracket(algebra, f, g)
        if h_coefficient(commutator, 0) or first != expected:
            return {
                "property": "bracket",
                "f": format_polynomial(f),
                "g": format_polynomial(g),
                "expected": format_polynomial(expected),
                "found": format_polynomial(first),
            }
        return None

    return collect(
        f"semiclassical {product.name} on {algebra.name}",
        limits,
        monomial_tuples(product.context, 2, degree),
        workers,
    )


def check_associativity(product: StarProduct, degree: int, order=None, workers=1):
    """(f*g)*k == f*(g*k) on monomial triples of combined degree at most ``degree``."""

    def associative(triple):
        f, g, k = triple
        left = product(product(f, g), k)
        right = product(f, product(g, k))
        if order is not None:
            left, right = truncate_h(left, order), truncate_h(right, order)
        if left != right:
            return {
                "f": format_polynomial(f),
                "g": format_polynomial(g),
                "k": format_polynomial(k),
                "difference": format_polynomial(left - right),
            }
        return None

    return collect(
        f"associativity {product.name}",
        associative,
        monomial_tuples(product.context, 3, degree),
        workers,
    )


def division_variable(rho, context: PolyContext) -> str:
    """Last coordinate in which ``rho`` has a unit pure-power leading part."""
    for name in reversed(context.coordinates):
        gen = context.var(name)
        d = rho.degree(gen)
        if d >= 1 and coefficient_in(rho, gen, d) == 1:
            return name
    raise NotPrincipal(format_polynomial(rho))


def ideal_remainder(f, rho, variable: str):
    """Remainder of ``f`` on division by the ideal generator ``rho``."""
    return divide_monic(f, rho, variable)[1]


def check_tangential(
    product: StarProduct, generators, degree: int, h_order: int, workers=1
):
    """Test whether each ideal generator stays in the ideal under the product.

    For every generator rho and every coordinate monomial f of degree at most
    ``degree``, each h^k coefficient (k <= ``h_order``) of rho*f and f*rho is
    divided by rho; the first nonzero remainder is the witness.
    """
    context = product.context
    cases = []
    for rho in generators:
        variable = division_variable(rho, context)
        for f in monomials(context, degree):
            cases.append((rho, variable, f))

    def tangent(case):
        rho, variable, f = case
        for side, value in (("left", product(rho, f)), ("right", product(f, rho))):
            for k in range(min(h_order, h_degree(value)) + 1):
                remainder = ideal_remainder(h_coefficient(value, k), rho, variable)
                if remainder:
                    return {
                        "generator": format_polynomial(rho),
                        "monomial": format_polynomial(f),
                        "side": side,
                        "h_order": k,
                        "remainder": format_polynomial(remainder),
                    }
        return None

    return collect(f"tangential {product.name}", tangent, cases, workers)


def check_agreement(first: StarProduct, second: StarProduct, degree: int, workers=1):
    """The two products agree on monomial pairs up to combined ``degree``."""

    def agree(pair):
        f, g = pair
        left, right = first(f, g), second(f, g)
        if left != right:
            return {
                "f": format_polynomial(f),
                "g": format_polynomial(g),
                first.name: format_polynomial(left),
                second.name: format_polynomial(right),
            }
        return None

    return collect(
        f"{first.name} equals {second.name}",
        agree,
        monomial_tuples(first.context, 2, degree),
        workers,
    )


def check_plane_restriction(context: PolyContext, degree: int, workers=1):
    """Setting e = 1 in the Heisenberg product gives the Moyal product on (q, p)."""
    plane = PolyContext(HEISENBERG_PAIR)
    poisson = PoissonMatrix.canonical(HEISENBERG_PAIR)

    def restricts(pair):
        f, g = pair
        full = moyal_heisenberg(context.convert(f), context.convert(g))
        restricted = evaluate(full, {HEISENBERG_CENTER: 1})
        expected = moyal_r2n(f, g, poisson)
        if plane.convert(restricted) != expected:
            return {
                "f": format_polynomial(f),
                "g": format_polynomial(g),
                "restricted": format_polynomial(restricted),
                "expected": format_polynomial(expected),
            }
        return None

    return collect(
        "restriction e = 1", restricts, monomial_tuples(plane, 2, degree), workers
    )


def check_symplectic_invariance(product: MoyalR2n, matrix, degree: int, workers=1):
    """S(f) * S(g) = S(f * g) for a linear symplectic substitution S."""
    poisson = product.poisson
    if not is_symplectic(poisson, matrix):
        report = CheckReport(f"symplectic invariance {product.name}")
        report.fail(property="symplectic", matrix=matrix)
        return report

    def invariant(pair):
        f, g = pair
        left = product(
            symplectic_substitution(f, poisson, matrix),
            symplectic_substitution(g, poisson, matrix),
        )
        right = symplectic_substitution(product(f, g), poisson, matrix)
        if left != right:
            return {"f": format_polynomial(f), "g": format_polynomial(g)}
        return None

    return collect(
        f"symplectic invariance {product.name}",
        invariant,
        monomial_tuples(product.context, 2, degree),
        workers,
    )


class NotAntisymmetric(Exception):
    """Raise when a Poisson matrix is not antisymmetric."""

    def __init__(self, left: str = "", right: str = ""):
        self.message = f"Poisson matrix entries ({left}, {right}) are not antisymmetric"
        super().__init__(self.message)


class DimensionMismatch(Exception):
    """Raise when a matrix does not fit its variables."""

    def __init__(self, expected: int = 0, found: int = 0):
        self.message = f"Expected dimension {expected}, found {found}"
        super().__init__(self.message)


class NotPrincipal(Exception):
    """Raise when an ideal generator has no unit pure-power leading part."""

    def __init__(self, generator_text: str = ""):
        self.message = (
            f"{generator_text} has no coordinate with a unit pure-power leading part"
        )
        super().__init__(self.message)
