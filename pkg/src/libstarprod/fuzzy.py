"""Spin-j representations of su(2) and the fuzzy-sphere matrix algebras."""

from dataclasses import dataclass
import logging

from sympy import integer_nthroot
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from libstarprod.liealg import LieAlgebra
from libstarprod.orbit.su2 import b1_monomials, psi_su2, quotient_class
from libstarprod.poly import (
    evaluate,
    format_polynomial,
    format_scalar,
    gaussian,
    ground_value,
)
from libstarprod.report import CheckReport, collect
from libstarprod.uea import EnvelopingElement

parent_logger = logging.getLogger(__name__)

RAISING = "r(r+h) = c"
LOWERING = "r(r+h) = -c"


@dataclass(frozen=True, eq=False)
class Irrep:
    """Exact matrices of X, Y, Z on the spin-``j`` module at deformation ``h``."""

    j: object
    h: object
    matrices: tuple

    @property
    def dimension(self) -> int:
        return int(2 * self.j) + 1

    def identity(self) -> DomainMatrix:
        return DomainMatrix.eye(self.dimension, QQ_I).to_dense()

    def zero(self) -> DomainMatrix:
        return DomainMatrix.zeros((self.dimension, self.dimension), QQ_I).to_dense()

    def casimir_matrix(self) -> DomainMatrix:
        """X^2 + Y^2 + Z^2."""
        result = self.zero()
        for m in self.matrices:
            result = result + m * m
        return result


def same_matrix(a: DomainMatrix, b: DomainMatrix) -> bool:
    """Entrywise equality, independent of the sparse or dense storage."""
    return a.shape == b.shape and a.to_list() == b.to_list()


def _ladder(n: int):
    """Integer ladder matrices of the (n+1)-dimensional module."""
    size = n + 1
    raising = [[0] * size for _ in range(size)]
    lowering = [[0] * size for _ in range(size)]
    diagonal = [[0] * size for _ in range(size)]
    for k in range(size):
        diagonal[k][k] = n - 2 * k
        if k >= 1:
            raising[k - 1][k] = k * (n - k + 1)
        if k + 1 < size:
            lowering[k + 1][k] = 1
    return raising, lowering, diagonal


def _gaussian_matrix(rows, scale) -> DomainMatrix:
    size = len(rows)
    return DomainMatrix(
        [[QQ_I.convert(v) * scale for v in row] for row in rows], (size, size), QQ_I
    )


def build_irrep(j, h) -> Irrep:
    """Spin-``j`` representation with [rho(X), rho(Y)] = h rho(Z) and cyclic.

    rho(X) = -ih(E+F)/2, rho(Y) = -h(E-F)/2 and rho(Z) = -ihH/2 in terms of
    the integer ladder matrices E, F, H.
    """
    j, h = QQ.convert(j), QQ.convert(h)
    twice = 2 * j
    if j < 0 or QQ.denom(twice) != 1:
        raise InvalidSpin(j, "2j must be a non-negative integer")
    if not h:
        raise InvalidSpin(j, "h must be nonzero")
    raising, lowering, diagonal = _ladder(int(QQ.numer(twice)))
    size = len(raising)
    plus = [[raising[a][b] + lowering[a][b] for b in range(size)] for a in range(size)]
    minus = [[raising[a][b] - lowering[a][b] for b in range(size)] for a in range(size)]
    half = gaussian(h) * QQ_I.convert_from(QQ(1, 2), QQ)
    i = QQ_I.imag_unit
    matrices = (
        _gaussian_matrix(plus, -i * half),
        _gaussian_matrix(minus, -half),
        _gaussian_matrix(diagonal, -i * half),
    )
    parent_logger.debug("built spin %s representation at h = %s", j, h)
    return Irrep(j, h, matrices)


def check_brackets(algebra: LieAlgebra, rep: Irrep) -> CheckReport:
    """rho([X_i, X_j]) = h^-1 [rho X_i, rho X_j] for every pair."""
    report = CheckReport(f"brackets spin {format_scalar(rep.j)}")
    h = gaussian(rep.h)
    for a in range(algebra.dimension):
        for b in range(a + 1, algebra.dimension):
            report.checked += 1
            left = rep.matrices[a] * rep.matrices[b] - rep.matrices[b] * rep.matrices[a]
            right = rep.zero()
            for k, c in algebra.bracket_terms(a, b).items():
                right = right + rep.matrices[k] * (h * QQ_I.convert_from(c, QQ))
            if not same_matrix(left, right):
                report.fail(pair=f"({algebra.basis[a]}, {algebra.basis[b]})")
    return report


def casimir_eigenvalue(rep: Irrep):
    """The rational lambda with rho(P) = lambda Id."""
    matrix = rep.casimir_matrix()
    rows = matrix.to_list()
    value = rows[0][0]
    scalar = all(
        entry == (value if a == b else QQ_I.zero)
        for a, row in enumerate(rows)
        for b, entry in enumerate(row)
    )
    if not scalar:
        raise NotScalar(format_matrix(matrix))
    if value.y:
        raise NotScalar(format_scalar(value))
    return value.x


def _rational_sqrt(value):
    if value < 0:
        return None
    numerator, exact = integer_nthroot(int(QQ.numer(value)), 2)
    denominator, exact_denominator = integer_nthroot(int(QQ.denom(value)), 2)
    if not (exact and exact_denominator):
        return None
    return QQ(numerator, denominator)


def _quadratic_roots(h, c):
    """Rational solutions of r^2 + h r - c = 0, largest first."""
    root = _rational_sqrt(h * h + 4 * c)
    if root is None:
        return None
    return sorted({(-h + root) / 2, (-h - root) / 2}, reverse=True)


def level_radius(rep: Irrep):
    """Solve r(r+h) = lambda, else r(r+h) = -lambda, over the rationals.

    Returns ``(convention, roots)``; ``(None, [])`` when neither convention
    has a rational solution.
    """
    value = casimir_eigenvalue(rep)
    for convention, target in ((RAISING, value), (LOWERING, -value)):
        roots = _quadratic_roots(rep.h, target)
        if roots is not None:
            return convention, roots
    parent_logger.warning(
        "no rational radius for spin %s at h = %s", format_scalar(rep.j), rep.h
    )
    return None, []


def _specialize(coeff, rep: Irrep, params):
    values = {"h": rep.h, **(params or {})}
    return gaussian(ground_value(evaluate(coeff, values)))


def _word_matrix(word, rep: Irrep) -> DomainMatrix:
    result = rep.identity()
    for i in word:
        result = result * rep.matrices[i]
    return result


def represent_element(a: EnvelopingElement, rep: Irrep, params=None) -> DomainMatrix:
    """Evaluate the PBW expansion of ``a`` with h and ``params`` specialized."""
    result = rep.zero()
    for word, coeff in a.terms.items():
        value = _specialize(coeff, rep, params)
        if value:
            result = result + _word_matrix(word, rep) * value
    return result


def represent(element, rep: Irrep, params=None) -> DomainMatrix:
    """Matrix of a quotient class; the level must match the Casimir eigenvalue."""
    level = _specialize(element.orbit.level, rep, params)
    eigenvalue = gaussian(casimir_eigenvalue(rep))
    if level != eigenvalue:
        raise DescentFailure(format_scalar(level), format_scalar(eigenvalue))
    return represent_element(element.element, rep, params)


def check_homomorphism(orbit, rep: Irrep, degree: int, params=None, workers=1):
    """represent(a*b) = represent(a) represent(b) on B1 pairs.

    Pairs have combined degree at most ``degree``; the ideal generator must be
    annihilated first.
    """
    context = orbit.context
    basis = b1_monomials(context, degree)
    pairs = [
        (f, g)
        for f in basis
        for g in basis
        if sum(next(iter(f.keys()))) + sum(next(iter(g.keys()))) <= degree
    ]
    annihilated = represent_element(orbit.ideal_generator, rep, params)
    report = CheckReport(f"homomorphism spin {format_scalar(rep.j)}")
    if not annihilated.is_zero_matrix:
        report.checked = 1
        report.fail(property="descent", generator=str(orbit.ideal_generator))
        return report

    def multiplicative(pair):
        a, b = (quotient_class(psi_su2(m, orbit), orbit) for m in pair)
        left = represent(a * b, rep, params)
        right = represent(a, rep, params) * represent(b, rep, params)
        if not same_matrix(left, right):
            return {"a": format_polynomial(pair[0]), "b": format_polynomial(pair[1])}
        return None

    return collect(report.name, multiplicative, pairs, workers)


def image_dimension(rep: Irrep, degree_cap=None) -> int:
    """Rank of the span of ordered B1 monomials up to ``degree_cap`` (default 2j)."""
    cap = int(2 * rep.j) if degree_cap is None else degree_cap
    rows = []
    for total in range(cap + 1):
        for nu in range(min(total, 1) + 1):
            for m in range(total - nu + 1):
                word = (0,) * m + (1,) * (total - nu - m) + (2,) * nu
                rows.append(_word_matrix(word, rep).flat())
    size = rep.dimension * rep.dimension
    return DomainMatrix(rows, (len(rows), size), QQ_I).rank()


def format_matrix(matrix: DomainMatrix) -> str:
    """Row-major exact text, one bracketed row per line."""
    return "\n".join(
        "[" + ", ".join(format_scalar(v) for v in row) + "]" for row in matrix.to_list()
    )


class InvalidSpin(Exception):
    """Raise when a spin is not a non-negative half-integer or h is zero."""

    def __init__(self, j=None, reason: str = ""):
        self.j = j
        self.message = f"Invalid spin {j}: {reason}"
        super().__init__(self.message)


class NotScalar(Exception):
    """Raise when the Casimir matrix is not a multiple of the identity."""

    def __init__(self, matrix: str = ""):
        self.matrix = matrix
        self.message = f"Casimir is not scalar:\n{matrix}"
        super().__init__(self.message)


class DescentFailure(Exception):
    """Raise when the quotient level differs from the Casimir eigenvalue."""

    def __init__(self, level: str = "", eigenvalue: str = ""):
        self.level = level
        self.eigenvalue = eigenvalue
        self.message = f"Level {level} differs from the Casimir eigenvalue {eigenvalue}"
        super().__init__(self.message)
